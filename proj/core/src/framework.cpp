#include "repol/framework.hpp"

#include <cmath>

#include "repol/errors.hpp"
#include "repol/grid.hpp"

namespace repol {

namespace {
constexpr double kFedNormSlack = 1e-9;
}

FrameworkParams framework_params(long T, std::size_t n, double rho, FrameworkVariant variant) {
    if (T < 2) throw Error("domain", "horizon T must be >= 2");
    if (n < 2) throw Error("domain", "dimension n must be >= 2");
    if (!(rho > 0.0) || !(rho < 1.0)) throw Error("domain", "rho must lie in (0, 1)");
    const double Td = static_cast<double>(T);
    const double nd = static_cast<double>(n);
    const double m = (std::sqrt(2.0 * std::log(4.0 * Td / rho) / nd) + 2.0) * std::sqrt(nd * Td);
    const double raw = variant == FrameworkVariant::L1 ? std::sqrt(8.0 * nd * m * Td / rho)
                                                       : std::sqrt(8.0 * m * Td / rho);
    const long Bu = static_cast<long>(std::ceil(raw));
    const bool clamped = Bu > T;
    const long B = clamped ? T : Bu;
    const double Bd = static_cast<double>(B);
    const double eps = variant == FrameworkVariant::L1 ? 2.0 * nd / Bd : 2.0 / Bd;
    const double normalizer =
        variant == FrameworkVariant::L1 ? Bd + 2.0 * nd / eps : Bd + 2.0 / eps;
    const double gamma = rho * Bd / (4.0 * Td);
    return FrameworkParams{T, n, rho, variant, m, gamma, Bu, B, eps, normalizer, clamped};
}

namespace {

class FtplInternal final : public InternalLearner {
public:
    FtplInternal(ActionSet actions, double eps, NormBound input_norm, const Bundle& bundle)
        : actions_(std::move(actions)),
          input_norm_(input_norm),
          cum_(actions_.dim()),
          perturbation_(sample_uniform_box(bundle.fork("perturbation"), actions_.dim(),
                                           1.0 / eps)) {
        if (!(eps > 0.0)) throw Error("domain", "internal ftpl eps must be positive");
    }

    NormBound input_norm() const override { return input_norm_; }

    std::size_t step(const std::vector<double>& normalized_cost) override {
        cum_.add(normalized_cost);
        std::vector<double> score = cum_.value();
        for (std::size_t i = 0; i < score.size(); ++i) score[i] += perturbation_[i];
        return actions_.argmin(score);
    }

private:
    ActionSet actions_;
    NormBound input_norm_;
    KahanVector cum_;
    std::vector<double> perturbation_;
};

}  // namespace

std::unique_ptr<InternalLearner> ftpl_internal(const ActionSet& actions, double eps,
                                               NormBound input_norm, const Bundle& bundle) {
    return std::make_unique<FtplInternal>(actions, eps, input_norm, bundle);
}

FrameworkWrapper::FrameworkWrapper(std::size_t n_actions,
                                   std::unique_ptr<InternalLearner> internal,
                                   const FrameworkParams& params, const Bundle& bundle)
    : n_actions_(n_actions),
      internal_(std::move(internal)),
      params_(params),
      offsets_root_(bundle.fork("offsets")),
      cum_(params.n),
      prev_transition_cum_(params.n, 0.0) {
    if (!internal_) throw Error("domain", "wrapper needs an internal learner");
    const NormBound want =
        params_.variant == FrameworkVariant::L1 ? NormBound::L1Unit : NormBound::LinfUnit;
    if (internal_->input_norm() != want) {
        throw Error("domain", "internal learner norm does not match the framework variant");
    }
}

std::size_t FrameworkWrapper::next_action() {
    ++t_;
    if ((t_ - 1) % params_.B == 0) {
        ++block_;
        const Bundle b = offsets_root_.fork(static_cast<std::uint64_t>(block_));
        // p before p' at every transition, so stream use is deterministic.
        const auto p = sample_uniform_box(b.fork("p"), params_.n, 1.0 / params_.eps);
        const auto pp = sample_uniform_box(b.fork("pp"), params_.n, 1.0 / params_.eps);
        offsets_drawn_ = block_;

        const auto g = LazyGrid(params_.eps, p).round(cum_.value());
        const auto gp = LazyGrid(params_.eps, pp).round(prev_transition_cum_);

        std::vector<double> fed(params_.n);
        for (std::size_t i = 0; i < params_.n; ++i) {
            fed[i] = (g[i] - gp[i]) / params_.normalizer;
        }
        const double norm = params_.variant == FrameworkVariant::L1 ? l1_norm(fed)
                                                                    : linf_norm(fed);
        if (norm > 1.0 + kFedNormSlack) {
            throw Error("norm", "fed vector exceeds its declared unit bound");
        }
        prev_transition_cum_ = cum_.value();
        last_fed_ = fed;

        const std::size_t a = internal_->step(fed);
        if (a >= n_actions_) throw Error("protocol", "internal learner emitted an invalid action");
        current_ = a;
    }
    return current_;
}

void FrameworkWrapper::observe(const CostVector& c) {
    if (c.dim() != params_.n) throw Error("shape", "cost dimension mismatch");
    cum_.add(c.values());
}

std::unique_ptr<FrameworkWrapper> wrap(std::size_t n_actions,
                                       std::unique_ptr<InternalLearner> internal,
                                       const FrameworkParams& params, const Bundle& bundle) {
    return std::make_unique<FrameworkWrapper>(n_actions, std::move(internal), params, bundle);
}

TelescopingResult telescoping_check(const std::vector<CostVector>& sequence,
                                    const ActionSet& actions, const FrameworkParams& params,
                                    long draws, const Bundle& bundle) {
    if (draws < 1) throw Error("domain", "telescoping_check needs draws >= 1");
    const std::size_t n = params.n;
    const long T = static_cast<long>(sequence.size());
    const long B = params.B;
    const long blocks = (T + B - 1) / B;

    // Prefix sums at block boundaries 0, B, 2B, ..., blocks*B (zero-padded).
    std::vector<std::vector<double>> boundary(blocks + 1, std::vector<double>(n, 0.0));
    {
        KahanVector cum(n);
        long t = 0;
        for (long u = 1; u <= blocks; ++u) {
            for (long k = 0; k < B && t < T; ++k, ++t) cum.add(sequence[t].values());
            boundary[u] = cum.value();
        }
    }

    const std::size_t m = actions.size();
    std::vector<KahanSum> mean(m);
    std::vector<KahanSum> sq(m);
    for (long d = 0; d < draws; ++d) {
        const Bundle bd = bundle.fork(static_cast<std::uint64_t>(d));
        std::vector<double> sums(n, 0.0);
        for (long u = 1; u <= blocks; ++u) {
            const auto offset =
                sample_uniform_box(bd.fork(static_cast<std::uint64_t>(u)), n, 1.0 / params.eps);
            const LazyGrid grid(params.eps, offset);
            const auto g = grid.round(boundary[u]);
            const auto gp = grid.round(boundary[u - 1]);
            for (std::size_t i = 0; i < n; ++i) sums[i] += g[i] - gp[i];
        }
        for (std::size_t a = 0; a < m; ++a) {
            const double x = actions.action_cost(a, sums);
            mean[a].add(x);
            sq[a].add(x * x);
        }
    }

    TelescopingResult res;
    res.deviations.resize(m);
    res.standard_errors.resize(m);
    res.max_deviation = 0.0;
    res.se_at_max = 0.0;
    const double nd = static_cast<double>(draws);
    for (std::size_t a = 0; a < m; ++a) {
        const double mu = mean[a].value() / nd;
        const double var = std::max(0.0, sq[a].value() / nd - mu * mu);
        const double se = std::sqrt(var / nd);
        const double target = actions.action_cost(a, boundary[blocks]);
        const double dev = std::abs(mu - target);
        res.deviations[a] = dev;
        res.standard_errors[a] = se;
        if (dev >= res.max_deviation) {
            res.max_deviation = dev;
            res.se_at_max = se;
        }
    }
    return res;
}

}  // namespace repol
