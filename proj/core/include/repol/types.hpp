#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace repol {

enum class NormBound { L1Unit, LinfUnit };

double l1_norm(std::span<const double> v);
double linf_norm(std::span<const double> v);

// One cost observation. L1Unit vectors satisfy sum |v_i| <= 1 (online
// linear optimization); LinfUnit vectors have every entry in [0, 1]
// (experts costs). Immutable after construction.
class CostVector {
public:
    CostVector(std::vector<double> values, NormBound norm_bound);

    const std::vector<double>& values() const { return values_; }
    NormBound norm_bound() const { return norm_bound_; }
    std::size_t dim() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
    NormBound norm_bound_;
};

// n experts (actions are the basis indices, costs read coordinate-wise)
// or a finite set of points in R^n scored by inner product.
class ActionSet {
public:
    enum class Kind { Experts, FinitePoints };

    static ActionSet experts(std::size_t n);
    static ActionSet finite_points(std::vector<std::vector<double>> points);

    // The standard-basis embedding of n experts as points in R^n.
    static ActionSet basis_points(std::size_t n);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const;  // number of actions
    double l1_diameter() const { return l1_diameter_; }
    const std::vector<std::vector<double>>& points() const { return points_; }

    // Cost of action a against an arbitrary vector of matching dimension
    // (coordinate lookup for experts, inner product for points).
    double action_cost(std::size_t a, std::span<const double> v) const;

    // Lowest-index minimizer of action_cost(a, v).
    std::size_t argmin(std::span<const double> v) const;

private:
    ActionSet(Kind kind, std::size_t dim, std::vector<std::vector<double>> points,
              double l1_diameter)
        : kind_(kind), dim_(dim), points_(std::move(points)), l1_diameter_(l1_diameter) {}

    Kind kind_;
    std::size_t dim_;
    std::vector<std::vector<double>> points_;  // FinitePoints only
    double l1_diameter_;
};

// Compensated (Kahan) accumulator; keeps prefix-sum drift O(1) per step
// over horizons up to 10^6.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanVector {
public:
    explicit KahanVector(std::size_t n) : acc_(n) {}
    void add(std::span<const double> v);
    std::vector<double> value() const;
    std::size_t dim() const { return acc_.size(); }
    double value_at(std::size_t i) const { return acc_[i].value(); }

private:
    std::vector<KahanSum> acc_;
};

// Full record of one run: actions taken, the cost each incurred, and the
// prefix sums c_{1:t} of the observed cost vectors.
struct Transcript {
    std::vector<std::size_t> actions;
    std::vector<double> costs_incurred;
    std::vector<std::vector<double>> cumulative_cost_vectors;

    std::size_t length() const { return actions.size(); }
    double total_cost() const;
};

struct RegretReport {
    double total_cost;
    double best_fixed_cost;
    std::size_t best_fixed_action;
    double regret;  // total_cost - best_fixed_cost, may be negative
};

// Lowest-total-cost fixed action; ties break to the lowest action index.
std::pair<std::size_t, double> best_in_hindsight(const std::vector<CostVector>& sequence,
                                                 const ActionSet& actions);

RegretReport regret(const Transcript& transcript, const std::vector<CostVector>& sequence,
                    const ActionSet& actions);

}  // namespace repol
