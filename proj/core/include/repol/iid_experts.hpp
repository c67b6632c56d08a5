#pragma once

#include <memory>
#include <vector>

#include "repol/algorithms.hpp"
#include "repol/bundle.hpp"

namespace repol {

// Schedule constants for the iid-replicable experts learner. llT is
// log2(log2((double)T)) floored at 1; all logs are natural.
struct IidScheduleParams {
    long T;
    std::size_t n;
    double rho;
    double llT;
    double alpha;  // sqrt(ln(8 n llT / rho))
    double gamma;  // rho / (8 llT)
    double beta;   // ln(8 n llT / rho)
    double eta;    // sqrt(2 ln(16 n / rho))
    double K;      // 1000 (1/rho) llT^2 ln(n llT / rho) sqrt(T)
    // Alg-literal eps^(i) = gamma / (2 alpha t) instead of the
    // sqrt-elapsed form the analysis uses.
    bool linear_noise_schedule = false;

    double fallback_threshold() const;  // K - 2 sqrt(T ln n)
    // Length of block i (1-based): ceil(T^(1 - 2^-i)).
    long block_length(int i) const;
};

IidScheduleParams iid_schedule_params(long T, std::size_t n, double rho,
                                      bool linear_noise_schedule = false);

// True once t == T is reached or the running regret crosses
// K - 2 sqrt(T ln n) (boundary inclusive); latches permanently.
bool iid_fallback_triggered(double regret_t, long t, const IidScheduleParams& params);

struct IidBlockRecord {
    int index;
    long start;        // first time step of the block
    long length;       // scheduled length (last block may be cut by T)
    double eps;        // 0 for the first block (no noise drawn)
    std::size_t expert;
};

class IidExpertsLearner final : public OnlineLearner {
public:
    IidExpertsLearner(const IidScheduleParams& params, const Bundle& bundle);

    std::size_t next_action() override;
    void observe(const CostVector& c) override;

    bool fallback_triggered() const { return fallback_; }
    double running_regret() const;
    const std::vector<IidBlockRecord>& block_log() const { return blocks_; }

private:
    void start_block();
    void enter_fallback();

    IidScheduleParams params_;
    Bundle bundle_;
    KahanVector cum_;
    KahanSum alg_cost_;
    std::vector<double> fallback_noise_;
    std::vector<IidBlockRecord> blocks_;
    long t_ = 0;
    long block_end_ = 0;
    int block_ = 0;
    std::size_t current_ = 0;
    bool fallback_ = false;
};

std::unique_ptr<IidExpertsLearner> iid_experts_learner(const IidScheduleParams& params,
                                                       const Bundle& bundle);

}  // namespace repol
