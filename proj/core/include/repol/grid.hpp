#pragma once

#include <span>
#include <vector>

#include "repol/bundle.hpp"

namespace repol {

// Lattice {offset + (1/eps) z | z in Z^n} with a random offset in
// [0, 1/eps)^n. round() maps a vector c to the unique lattice point in
// the half-open box c + [0, 1/eps)^n.
class LazyGrid {
public:
    LazyGrid(double eps, std::vector<double> offset);

    // Offset drawn uniformly from [0, 1/eps)^n.
    static LazyGrid sample(double eps, std::size_t n, const Bundle& bundle);

    std::vector<double> round(std::span<const double> c) const;

    double eps() const { return eps_; }
    double spacing() const { return spacing_; }
    std::size_t dim() const { return offset_.size(); }
    const std::vector<double>& offset() const { return offset_; }

private:
    double eps_;
    double spacing_;
    std::vector<double> offset_;
};

// Monte-Carlo estimate, over random offsets, of the probability that a
// scalar c and c + delta round to the same 1-d grid point. The exact
// value is max(0, 1 - eps * |delta|).
double collision_probability_1d(double eps, double delta, long trials, const Bundle& bundle);

}  // namespace repol
