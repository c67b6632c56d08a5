#include "repol/algorithms.hpp"

#include <cmath>

#include "repol/errors.hpp"

namespace repol {

namespace {

void check_params_domain(long T, std::size_t n, double rho) {
    if (T < 2) throw Error("domain", "horizon T must be >= 2");
    if (n < 2) throw Error("domain", "dimension n must be >= 2");
    if (!(rho > 0.0) || !(rho < 1.0)) throw Error("domain", "rho must lie in (0, 1)");
}

class FtplbLearner final : public OnlineLearner {
public:
    FtplbLearner(ActionSet actions, double eps, long B, const Bundle& bundle)
        : actions_(std::move(actions)),
          schedule_{B},
          cum_(actions_.dim()),
          perturbation_(sample_uniform_box(bundle.fork("perturbation"), actions_.dim(),
                                           1.0 / eps)) {
        if (!(eps > 0.0)) throw Error("domain", "ftplb eps must be positive");
        if (B < 1) throw Error("domain", "ftplb block size must be >= 1");
    }

    std::size_t next_action() override {
        ++t_;
        if (schedule_.is_transition(t_)) {
            std::vector<double> score = cum_.value();
            for (std::size_t i = 0; i < score.size(); ++i) score[i] += perturbation_[i];
            current_ = actions_.argmin(score);
        }
        return current_;
    }

    void observe(const CostVector& c) override { cum_.add(c.values()); }

private:
    ActionSet actions_;
    BlockSchedule schedule_;
    KahanVector cum_;
    std::vector<double> perturbation_;
    long t_ = 0;
    std::size_t current_ = 0;
};

class FllbLearner final : public OnlineLearner {
public:
    FllbLearner(ActionSet actions, double eps, long B, const Bundle& bundle)
        : actions_(std::move(actions)),
          schedule_{B},
          cum_(actions_.dim()),
          grid_(LazyGrid::sample(eps, actions_.dim(), bundle.fork("offset"))) {
        if (B < 1) throw Error("domain", "fllb block size must be >= 1");
        if (actions_.kind() != ActionSet::Kind::FinitePoints) {
            throw Error("domain", "fllb requires a finite point action set");
        }
    }

    std::size_t next_action() override {
        ++t_;
        if (schedule_.is_transition(t_)) {
            const auto g = grid_.round(cum_.value());
            current_ = actions_.argmin(g);
        }
        return current_;
    }

    void observe(const CostVector& c) override { cum_.add(c.values()); }

private:
    ActionSet actions_;
    BlockSchedule schedule_;
    KahanVector cum_;
    LazyGrid grid_;
    long t_ = 0;
    std::size_t current_ = 0;
};

class FtplbsLearner final : public OnlineLearner {
public:
    FtplbsLearner(std::size_t n, double eps, long B, const Bundle& bundle)
        : n_(n), schedule_{B}, cum_(n) {
        if (n < 2) throw Error("domain", "ftplbs needs n >= 2 experts");
        if (!(eps > 0.0) || eps > 1.0) throw Error("domain", "ftplbs eps must lie in (0, 1]");
        if (B < 1) throw Error("domain", "ftplbs block size must be >= 1");
        const Bundle noise = bundle.fork("noise");
        noise_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            noise_[a] = static_cast<double>(
                sample_geometric(noise.fork(static_cast<std::uint64_t>(a)), eps));
        }
    }

    std::size_t next_action() override {
        ++t_;
        if (schedule_.is_transition(t_)) {
            std::size_t best = 0;
            double best_score = cum_.value_at(0) - noise_[0];
            for (std::size_t a = 1; a < n_; ++a) {
                const double s = cum_.value_at(a) - noise_[a];
                if (s < best_score) {
                    best = a;
                    best_score = s;
                }
            }
            current_ = best;
        }
        return current_;
    }

    void observe(const CostVector& c) override {
        if (c.dim() != n_) throw Error("shape", "expert cost dimension mismatch");
        cum_.add(c.values());
    }

private:
    std::size_t n_;
    BlockSchedule schedule_;
    KahanVector cum_;
    std::vector<double> noise_;
    long t_ = 0;
    std::size_t current_ = 0;
};

}  // namespace

FllbParams fllb_params(long T, std::size_t n, double rho) {
    check_params_domain(T, n, rho);
    const double Td = static_cast<double>(T);
    const double p = std::sqrt(2.0 * std::log(2.0 * Td / rho)) + 2.0;
    const double raw = std::pow(2.0 * p * std::sqrt(static_cast<double>(n)) * Td / rho, 2.0 / 3.0);
    const long Bu = static_cast<long>(std::ceil(raw));
    const bool clamped = Bu > T;
    const long B = clamped ? T : Bu;
    const double eps = 1.0 / std::sqrt(static_cast<double>(B) * Td);
    return FllbParams{T, n, rho, Bu, B, eps, clamped};
}

FtplbsParams ftplbs_params(long T, std::size_t n, double rho) {
    check_params_domain(T, n, rho);
    const double Td = static_cast<double>(T);
    const double ln_n = std::log(static_cast<double>(n));
    const double p = std::sqrt(2.0 * (std::log(8.0 * Td / rho) / ln_n + 1.0));
    const double raw = std::pow(8.0 * p * ln_n * Td / rho, 2.0 / 3.0);
    const long Bu = static_cast<long>(std::ceil(raw));
    const bool clamped = Bu > T;
    const long B = clamped ? T : Bu;
    const double eps = std::sqrt(ln_n / (static_cast<double>(B) * Td));
    return FtplbsParams{T, n, rho, Bu, B, eps, clamped};
}

std::unique_ptr<OnlineLearner> ftplb(const ActionSet& actions, double eps, long B,
                                     const Bundle& bundle) {
    return std::make_unique<FtplbLearner>(actions, eps, B, bundle);
}

std::unique_ptr<OnlineLearner> ftpl(const ActionSet& actions, double eps, const Bundle& bundle) {
    return std::make_unique<FtplbLearner>(actions, eps, 1, bundle);
}

std::unique_ptr<OnlineLearner> fllb(const ActionSet& actions, const FllbParams& params,
                                    const Bundle& bundle) {
    return std::make_unique<FllbLearner>(actions, params.eps, params.B, bundle);
}

std::unique_ptr<OnlineLearner> fllb(const ActionSet& actions, double eps, long B,
                                    const Bundle& bundle) {
    return std::make_unique<FllbLearner>(actions, eps, B, bundle);
}

std::unique_ptr<OnlineLearner> ftplbs(std::size_t n, double eps, long B, const Bundle& bundle) {
    return std::make_unique<FtplbsLearner>(n, eps, B, bundle);
}

std::vector<std::size_t> btl_actions(const ActionSet& actions,
                                     const std::vector<CostVector>& sequence) {
    KahanVector cum(actions.dim());
    std::vector<std::size_t> out;
    out.reserve(sequence.size());
    for (const auto& c : sequence) {
        cum.add(c.values());
        out.push_back(actions.argmin(cum.value()));
    }
    return out;
}

std::vector<std::size_t> btpl_actions(const ActionSet& actions,
                                      const std::vector<CostVector>& sequence,
                                      const std::vector<double>& day0) {
    if (day0.size() != actions.dim()) throw Error("shape", "day0 dimension mismatch");
    KahanVector cum(actions.dim());
    cum.add(day0);
    std::vector<std::size_t> out;
    out.reserve(sequence.size());
    for (const auto& c : sequence) {
        cum.add(c.values());
        out.push_back(actions.argmin(cum.value()));
    }
    return out;
}

}  // namespace repol
