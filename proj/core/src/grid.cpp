#include "repol/grid.hpp"

#include <cmath>

#include "repol/errors.hpp"

namespace repol {

LazyGrid::LazyGrid(double eps, std::vector<double> offset)
    : eps_(eps), spacing_(1.0 / eps), offset_(std::move(offset)) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw Error("domain", "grid eps must be positive and finite");
    }
    if (offset_.empty()) throw Error("shape", "grid offset must have dimension >= 1");
    for (double p : offset_) {
        if (!(p >= 0.0) || !(p < spacing_)) {
            throw Error("domain", "grid offset coordinates must lie in [0, 1/eps)");
        }
    }
}

LazyGrid LazyGrid::sample(double eps, std::size_t n, const Bundle& bundle) {
    if (!(eps > 0.0)) throw Error("domain", "grid eps must be positive");
    return LazyGrid(eps, sample_uniform_box(bundle, n, 1.0 / eps));
}

std::vector<double> LazyGrid::round(std::span<const double> c) const {
    if (c.size() != offset_.size()) throw Error("shape", "grid dimension mismatch");
    std::vector<double> g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        double v = offset_[i] + spacing_ * std::ceil((c[i] - offset_[i]) * eps_);
        // Absorb rounding at exact box boundaries: g_i must land in
        // [c_i, c_i + spacing), and one step suffices.
        if (v < c[i]) v += spacing_;
        if (v >= c[i] + spacing_) v -= spacing_;
        if (v < c[i]) v = c[i];
        g[i] = v;
    }
    return g;
}

double collision_probability_1d(double eps, double delta, long trials, const Bundle& bundle) {
    if (delta < 0.0) throw Error("domain", "delta must be >= 0");
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const double c = 0.0;
    long hits = 0;
    for (long k = 0; k < trials; ++k) {
        LazyGrid grid = LazyGrid::sample(eps, 1, bundle.fork(static_cast<std::uint64_t>(k)));
        const double a = grid.round(std::vector<double>{c})[0];
        const double b = grid.round(std::vector<double>{c + delta})[0];
        if (a == b) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace repol
