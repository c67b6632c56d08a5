#pragma once

#include <functional>
#include <string>
#include <vector>

#include "repol/bundle.hpp"
#include "repol/types.hpp"

namespace repol {

// One step's input model. PointMass emits a fixed vector; the stochastic
// kinds draw from the given stream. Sampled values are multiplied by
// scale before the norm check.
struct StepDistribution {
    enum class Kind { PointMass, BernoulliExperts, UniformBox, Custom };

    Kind kind = Kind::PointMass;
    std::vector<double> values;  // PointMass vector or Bernoulli biases
    double width = 1.0;          // UniformBox
    double scale = 1.0;
    std::function<std::vector<double>(Stream&)> custom;

    std::vector<double> sample(std::size_t n, Stream& s) const;
};

// The oblivious adversary: a product of per-step distributions with a
// declared norm bound every sample must satisfy. Immutable; sampling is
// a pure function of (bundle, t).
struct DistributionSequence {
    std::size_t n = 0;
    NormBound norm_bound = NormBound::LinfUnit;
    std::vector<StepDistribution> steps;

    long T() const { return static_cast<long>(steps.size()); }
};

// Sample of step t (1-based); pure in (bundle, t).
CostVector sample_step(const DistributionSequence& seq, long t, const Bundle& bundle);

std::vector<CostVector> sample_trajectory(const DistributionSequence& seq, const Bundle& bundle);

// Two complementary experts driven by one Bernoulli(1/2 + sign*tau)
// coin: c_t(1) = coin, c_t(2) = 1 - coin. Requires 0 <= tau < 1/4.
DistributionSequence coin_embedding(long T, double tau, int sign);

// The construction behind the non-replicability example for unblocked
// FLL/FTPL: step 1 is a point mass (0, bonus) with bonus < 0, later
// steps make expert 1 cheaper by drift in expectation, so the leader
// flips at a sample-dependent time. L1-unit OLO costs.
DistributionSequence fll_counterexample(long n_steps, double bonus, double drift);

// Empirical frequency, over paired trajectory draws, that
// max_{t<=T} l1(c_{1:t} - c'_{1:t}) / sqrt(t n) exceeds c.
double concentration_diagnostic(const DistributionSequence& seq, double c, long trials,
                                const Bundle& bundle);

// Builtin adversaries by name (see docs/CLI): "zeros", "bernoulli-experts",
// "bernoulli-olo", "uniform-box-l1", "mixed-l1", "coin+": tau via
// "coin+:0.05", "coin-:0.05", "fll-counterexample".
DistributionSequence builtin_adversary(const std::string& name, long T, std::size_t n);

// JSON schema: {"n": 2, "norm": "l1"|"linf", "steps": [ {...},
// {"repeat": 10, "step": {...}} ]} where a step is
// {"kind": "point_mass", "values": [...]} |
// {"kind": "bernoulli_experts", "bias": [...], "scale": s} |
// {"kind": "uniform_box", "width": w, "scale": s}.
DistributionSequence adversary_from_json(const std::string& json_text);
DistributionSequence adversary_from_file(const std::string& path);

}  // namespace repol
