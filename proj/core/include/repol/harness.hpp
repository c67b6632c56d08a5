#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "repol/adversaries.hpp"
#include "repol/algorithms.hpp"
#include "repol/bundle.hpp"
#include "repol/stats.hpp"
#include "repol/types.hpp"

namespace repol {

using LearnerFactory = std::function<std::unique_ptr<OnlineLearner>(const Bundle&)>;

// Drives one learner over a full sequence and records the transcript.
Transcript run_learner(OnlineLearner& learner, const std::vector<CostVector>& sequence,
                       const ActionSet& actions);

// Transcript of a fixed (e.g. oracle-produced) action sequence.
Transcript transcript_from_actions(const std::vector<std::size_t>& actions_taken,
                                   const std::vector<CostVector>& sequence,
                                   const ActionSet& actions);

struct PairedRunResult {
    Transcript transcript_1;
    Transcript transcript_2;
    bool identical;
    std::optional<long> first_divergence;  // 1-based step index
    // Auxiliary per-step match rate (the approximate-replicability notion).
    double per_step_match_rate;
};

// Two trajectories from disjoint forks ("traj1"/"traj2"), two fresh
// learners from the SAME "alg" fork; compares action sequences.
PairedRunResult paired_run(const LearnerFactory& factory, const DistributionSequence& seq,
                           const ActionSet& actions, const Bundle& bundle);

struct ReplicabilityEstimate {
    long successes;
    long trials;
    double point_estimate;
    double ci_low;
    double ci_high;
    double confidence;
    double mean_per_step_match;
};

// Paired runs with bundles forked per run index; exact binomial CI.
ReplicabilityEstimate estimate_replicability(const LearnerFactory& factory,
                                             const DistributionSequence& seq,
                                             const ActionSet& actions, long trials,
                                             std::uint64_t master_seed,
                                             double confidence = 0.95, unsigned threads = 1);

struct RegretSummary {
    double mean;
    double se;
    std::vector<double> per_trial;
};

// Mean regret over trials of fresh learner bundles on one fixed sequence.
RegretSummary evaluate_regret(const LearnerFactory& factory,
                              const std::vector<CostVector>& sequence, const ActionSet& actions,
                              long trials, std::uint64_t master_seed, unsigned threads = 1);

// Same, with the instance redrawn per trial from the adversary when
// resample_per_trial is set (otherwise sampled once from the "instance"
// fork of the master seed).
RegretSummary evaluate_regret(const LearnerFactory& factory, const DistributionSequence& seq,
                              const ActionSet& actions, long trials, std::uint64_t master_seed,
                              bool resample_per_trial = false, unsigned threads = 1);

// One algorithm wired to an action set compatible with an adversary.
struct AlgorithmInstance {
    LearnerFactory factory;
    ActionSet actions;
    std::string name;
    long B = 0;        // 0 when not applicable
    double eps = 0.0;  // 0 when not applicable
};

// Registry lookup for the CLI names: ftpl, flbb (alias fllb), ftplb,
// ftplbs, framework-l1, framework-linf, iid-experts. B/eps overrides fall
// back to the (T, n, rho) derivations.
AlgorithmInstance make_algorithm(const std::string& alg, long T, std::size_t n, double rho,
                                 NormBound adversary_norm,
                                 std::optional<long> B_override = std::nullopt,
                                 std::optional<double> eps_override = std::nullopt);

struct SweepConfig {
    std::vector<std::string> algs;
    std::vector<long> Ts;
    std::vector<std::size_t> ns;
    std::vector<double> rhos;
    std::vector<std::string> adversaries;  // builtin names or @file paths
    long trials = 100;
    long regret_trials = 0;  // 0 -> same as trials
    double confidence = 0.95;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    static SweepConfig from_json(const std::string& json_text);
    static SweepConfig from_file(const std::string& path);
};

struct SweepRow {
    std::string alg;
    long T;
    std::size_t n;
    double rho;
    long B;
    double eps;
    std::string adversary;
    long trials;
    double repl_point;
    double repl_ci_low;
    double repl_ci_high;
    double regret_mean;
    double regret_se;
    std::uint64_t seed;

    std::string key() const;
};

extern const char* const kSweepCsvHeader;

std::string sweep_row_to_csv(const SweepRow& row);

// Cartesian product of the config axes. Deterministic given the seed;
// rows already present in `skip_keys` are not recomputed (resume).
std::vector<SweepRow> sweep(const SweepConfig& config,
                            const std::vector<std::string>& skip_keys = {});

// Runs the sweep and writes CSV to `out_path`, skipping keys already in
// an existing file and appending the rest.
void sweep_to_csv(const SweepConfig& config, const std::string& out_path);

struct TradeoffRow {
    std::string alg;
    double tau;
    double rho;  // tuning target; 0 for the untuned baseline
    long B;
    double eps;
    long trials;
    double repl_point;
    double repl_ci_low;
    double repl_ci_high;
    double regret_mean;
    double regret_se;
    double majority_accuracy;
    std::vector<double> per_trial_regret;  // paired across rows (shared seeds)
};

// The lower-bound trade-off experiment: two-expert coin instances at
// each tau, FTPLB* tuned per rho target against a regret budget
// sqrt(T)/rho (eps = 4 ln(n)/budget, eps B T = budget/2), plus an
// untuned FTPL baseline. Rows for both coin signs are pooled. Trials
// share seeds across rows so regret differences can be compared paired.
std::vector<TradeoffRow> tradeoff_experiment(long T, const std::vector<double>& taus,
                                             const std::vector<double>& rho_targets, long trials,
                                             std::uint64_t master_seed, unsigned threads = 1);

}  // namespace repol
