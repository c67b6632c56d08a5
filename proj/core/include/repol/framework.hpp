#pragma once

#include <memory>
#include <vector>

#include "repol/algorithms.hpp"
#include "repol/bundle.hpp"
#include "repol/types.hpp"

namespace repol {

// Inner regret minimizer driven by the wrapper: consumes exactly one
// normalized cost vector per meta-step and returns the action to play
// for the next meta-step. Must be deterministic given (inputs, bundle).
class InternalLearner {
public:
    virtual ~InternalLearner() = default;
    virtual NormBound input_norm() const = 0;
    virtual std::size_t step(const std::vector<double>& normalized_cost) = 0;
};

enum class FrameworkVariant { L1, Linf };

struct FrameworkParams {
    long T;
    std::size_t n;
    double rho;
    FrameworkVariant variant;
    double m;      // l1 closeness radius of paired trajectories
    double gamma;  // closeness failure probability budget, rho B / (4T)
    long B_unclamped;
    long B;
    double eps;
    double normalizer;  // B + 2n/eps (L1) or B + 2/eps (Linf); equals 2B
    bool clamped;
};

// m = (sqrt(2 ln(4T/rho)/n) + 2) sqrt(nT); L1: B = ceil(sqrt(8nmT/rho)),
// eps = 2n/B; Linf: B = ceil(sqrt(8mT/rho)), eps = 2/B. B clamped to T.
FrameworkParams framework_params(long T, std::size_t n, double rho, FrameworkVariant variant);

// FTPL over an action set, packaged as an internal learner. Draws its
// own perturbation from the bundle; suitable for unit-l1 or unit-linf
// normalized inputs.
std::unique_ptr<InternalLearner> ftpl_internal(const ActionSet& actions, double eps,
                                               NormBound input_norm, const Bundle& bundle);

// The conversion wrapper: at each transition draws two fresh offsets,
// rounds c_{1:t-1} and c_{1:t-1-B} on their grids, feeds the normalized
// difference to the internal learner, and plays its action for the
// block. Prefixes with index <= 0 are the zero vector.
class FrameworkWrapper final : public OnlineLearner {
public:
    FrameworkWrapper(std::size_t n_actions, std::unique_ptr<InternalLearner> internal,
                     const FrameworkParams& params, const Bundle& bundle);

    std::size_t next_action() override;
    void observe(const CostVector& c) override;

    // Stream accounting: number of transitions whose offset pair has
    // been consumed. Equals the current block index while that block's
    // action is live, so the next block's offsets are still untouched.
    long offsets_drawn() const { return offsets_drawn_; }
    long current_block() const { return block_; }
    const std::vector<double>& last_fed_vector() const { return last_fed_; }

private:
    std::size_t n_actions_;
    std::unique_ptr<InternalLearner> internal_;
    FrameworkParams params_;
    Bundle offsets_root_;
    KahanVector cum_;
    std::vector<double> prev_transition_cum_;  // c_{1:t-1-B} at the next transition
    std::vector<double> last_fed_;
    long t_ = 0;
    long block_ = 0;
    long offsets_drawn_ = 0;
    std::size_t current_ = 0;
};

std::unique_ptr<FrameworkWrapper> wrap(std::size_t n_actions,
                                       std::unique_ptr<InternalLearner> internal,
                                       const FrameworkParams& params, const Bundle& bundle);

struct TelescopingResult {
    double max_deviation;  // max over actions of |normalizer * mean - cost(a, S)|
    double se_at_max;      // Monte-Carlo standard error for the arg max action
    std::vector<double> deviations;
    std::vector<double> standard_errors;
};

// Monte-Carlo check of the accounting identity behind the wrapper's
// regret bound: over random offsets, normalizer * E[sum_u a.S~_u] equals
// cost(a, S), where S~_u = (g_{uB} - g'_{(u-1)B}) / normalizer and the
// final block is closed by a virtual transition on the zero-padded
// sequence. Both grids share one offset per draw, which cancels the
// rounding residuals without biasing any term.
TelescopingResult telescoping_check(const std::vector<CostVector>& sequence,
                                    const ActionSet& actions, const FrameworkParams& params,
                                    long draws, const Bundle& bundle);

}  // namespace repol
