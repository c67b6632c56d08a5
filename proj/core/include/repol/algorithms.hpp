#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "repol/bundle.hpp"
#include "repol/grid.hpp"
#include "repol/types.hpp"

namespace repol {

// Stateful online learner. Call next_action() at step t, incur the
// returned action's cost, then hand the step's cost vector to observe().
// The action sequence is a pure function of (cost history, bundle).
class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;
    virtual std::size_t next_action() = 0;
    virtual void observe(const CostVector& c) = 0;
};

// Blocked time: step t is a transition iff (t - 1) mod B == 0.
struct BlockSchedule {
    long block_size;
    bool is_transition(long t) const { return (t - 1) % block_size == 0; }
};

struct FllbParams {
    long T;
    std::size_t n;
    double rho;
    long B_unclamped;  // ceil of the closed form, before the B <= T clamp
    long B;
    double eps;
    bool clamped;  // the closed form exceeded T; guarantee is vacuous
};

struct FtplbsParams {
    long T;
    std::size_t n;
    double rho;
    long B_unclamped;
    long B;
    double eps;
    bool clamped;
};

// B = ceil((2 (sqrt(2 ln(2T/rho)) + 2) sqrt(n) T / rho)^(2/3)), clamped
// to T; eps = 1/sqrt(BT) from the clamped integer B.
FllbParams fllb_params(long T, std::size_t n, double rho);

// B = ceil((8 sqrt(2 (ln(8T/rho)/ln(n) + 1)) ln(n) T / rho)^(2/3)),
// clamped to T; eps = sqrt(ln(n) / (BT)).
FtplbsParams ftplbs_params(long T, std::size_t n, double rho);

// Follow the Perturbed Leader with block updates. The hallucinated day-0
// cost c0 ~ Unif([0, 1/eps)^n) is drawn once from the bundle; at each
// transition the learner plays argmin_a a.(c0 + c_{1:t-1}) and repeats
// that action until the next transition. B = 1 is plain FTPL.
std::unique_ptr<OnlineLearner> ftplb(const ActionSet& actions, double eps, long B,
                                     const Bundle& bundle);

std::unique_ptr<OnlineLearner> ftpl(const ActionSet& actions, double eps, const Bundle& bundle);

// Follow the Lazy Leader with block updates: one random grid drawn up
// front; at transitions rounds c_{1:t-1} to the grid and best-responds.
// Requires a finite point set.
std::unique_ptr<OnlineLearner> fllb(const ActionSet& actions, const FllbParams& params,
                                    const Bundle& bundle);

std::unique_ptr<OnlineLearner> fllb(const ActionSet& actions, double eps, long B,
                                    const Bundle& bundle);

// Experts-only blocked perturbed leader with per-expert geometric noise
// X_a ~ Geo(eps) drawn once; at transitions plays
// argmin_a sum_{i<t} c_i(a) - X_a.
std::unique_ptr<OnlineLearner> ftplbs(std::size_t n, double eps, long B, const Bundle& bundle);

// Hindsight oracles (not implementable online; baselines for tests).
// btl_actions[t-1] = argmin_a cost of a over c_{1:t} (current step
// included). btpl_actions treats day0 as an extra cost vector at time 0.
std::vector<std::size_t> btl_actions(const ActionSet& actions,
                                     const std::vector<CostVector>& sequence);
std::vector<std::size_t> btpl_actions(const ActionSet& actions,
                                      const std::vector<CostVector>& sequence,
                                      const std::vector<double>& day0);

}  // namespace repol
