#include "repol/iid_experts.hpp"

#include <algorithm>
#include <cmath>

#include "repol/errors.hpp"

namespace repol {

double IidScheduleParams::fallback_threshold() const {
    return K - 2.0 * std::sqrt(static_cast<double>(T) * std::log(static_cast<double>(n)));
}

long IidScheduleParams::block_length(int i) const {
    const double e = 1.0 - std::pow(2.0, -static_cast<double>(i));
    return static_cast<long>(std::ceil(std::pow(static_cast<double>(T), e)));
}

IidScheduleParams iid_schedule_params(long T, std::size_t n, double rho,
                                      bool linear_noise_schedule) {
    if (T < 4) throw Error("domain", "iid experts schedule needs T >= 4");
    if (n < 2) throw Error("domain", "iid experts schedule needs n >= 2");
    if (!(rho > 0.0) || !(rho < 1.0)) throw Error("domain", "rho must lie in (0, 1)");
    IidScheduleParams p;
    p.T = T;
    p.n = n;
    p.rho = rho;
    p.linear_noise_schedule = linear_noise_schedule;
    const double Td = static_cast<double>(T);
    const double nd = static_cast<double>(n);
    p.llT = std::max(1.0, std::log2(std::log2(Td)));
    p.alpha = std::sqrt(std::log(8.0 * nd * p.llT / rho));
    p.gamma = rho / (8.0 * p.llT);
    p.beta = std::log(8.0 * nd * p.llT / rho);
    p.eta = std::sqrt(2.0 * std::log(16.0 * nd / rho));
    p.K = 1000.0 * (1.0 / rho) * p.llT * p.llT * std::log(nd * p.llT / rho) * std::sqrt(Td);
    return p;
}

bool iid_fallback_triggered(double regret_t, long t, const IidScheduleParams& params) {
    return t >= params.T || regret_t >= params.fallback_threshold();
}

IidExpertsLearner::IidExpertsLearner(const IidScheduleParams& params, const Bundle& bundle)
    : params_(params), bundle_(bundle), cum_(params.n) {}

std::unique_ptr<IidExpertsLearner> iid_experts_learner(const IidScheduleParams& params,
                                                       const Bundle& bundle) {
    return std::make_unique<IidExpertsLearner>(params, bundle);
}

double IidExpertsLearner::running_regret() const {
    double best = cum_.value_at(0);
    for (std::size_t a = 1; a < params_.n; ++a) best = std::min(best, cum_.value_at(a));
    return alg_cost_.value() - best;
}

void IidExpertsLearner::start_block() {
    ++block_;
    IidBlockRecord rec;
    rec.index = block_;
    rec.start = t_;
    rec.length = params_.block_length(block_);
    if (block_ == 1) {
        rec.eps = 0.0;
        current_ = 0;  // expert 1 for the first block
    } else {
        const double elapsed = static_cast<double>(t_ - 1);  // P^(i-1)
        const double denom = params_.linear_noise_schedule ? elapsed : std::sqrt(elapsed);
        double eps = params_.gamma / (2.0 * params_.alpha * denom);
        eps = std::min(1.0, eps);
        rec.eps = eps;
        const Bundle noise = bundle_.fork("block").fork(static_cast<std::uint64_t>(block_));
        std::size_t best = 0;
        double best_score = 0.0;
        for (std::size_t a = 0; a < params_.n; ++a) {
            const double x = static_cast<double>(
                sample_geometric(noise.fork(static_cast<std::uint64_t>(a)), eps));
            const double score = cum_.value_at(a) - x;
            if (a == 0 || score < best_score) {
                best = a;
                best_score = score;
            }
        }
        current_ = best;
    }
    block_end_ = std::min(params_.T, t_ + rec.length - 1);
    rec.expert = current_;
    blocks_.push_back(rec);
}

void IidExpertsLearner::enter_fallback() {
    fallback_ = true;
    const double eps = std::min(
        1.0, std::sqrt(std::log(static_cast<double>(params_.n)) / static_cast<double>(params_.T)));
    const Bundle noise = bundle_.fork("ftpl");
    fallback_noise_.resize(params_.n);
    for (std::size_t a = 0; a < params_.n; ++a) {
        fallback_noise_[a] = static_cast<double>(
            sample_geometric(noise.fork(static_cast<std::uint64_t>(a)), eps));
    }
}

std::size_t IidExpertsLearner::next_action() {
    ++t_;
    if (fallback_) {
        std::size_t best = 0;
        double best_score = cum_.value_at(0) - fallback_noise_[0];
        for (std::size_t a = 1; a < params_.n; ++a) {
            const double s = cum_.value_at(a) - fallback_noise_[a];
            if (s < best_score) {
                best = a;
                best_score = s;
            }
        }
        current_ = best;
        return current_;
    }
    if (t_ > block_end_) start_block();
    return current_;
}

void IidExpertsLearner::observe(const CostVector& c) {
    if (c.dim() != params_.n) throw Error("shape", "expert cost dimension mismatch");
    alg_cost_.add(c[current_]);
    cum_.add(c.values());
    // At t == T nothing remains to play; only the regret condition
    // forces an actual switch.
    if (!fallback_ && t_ < params_.T && running_regret() >= params_.fallback_threshold()) {
        enter_fallback();
    }
}

}  // namespace repol
