#include "repol/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "repol/errors.hpp"

namespace repol {

namespace {
constexpr double kNormTol = 1e-12;
}

double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double linf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

CostVector::CostVector(std::vector<double> values, NormBound norm_bound)
    : values_(std::move(values)), norm_bound_(norm_bound) {
    if (values_.empty()) {
        throw Error("shape", "cost vector must have dimension >= 1");
    }
    for (double x : values_) {
        if (!std::isfinite(x)) throw Error("norm", "cost vector entries must be finite");
    }
    if (norm_bound_ == NormBound::L1Unit) {
        if (l1_norm(values_) > 1.0 + kNormTol) {
            throw Error("norm", "L1Unit cost vector has l1 norm > 1");
        }
    } else {
        for (double x : values_) {
            if (x < -kNormTol || x > 1.0 + kNormTol) {
                throw Error("norm", "LinfUnit expert costs must lie in [0, 1]");
            }
        }
    }
}

ActionSet ActionSet::experts(std::size_t n) {
    if (n < 2) throw Error("domain", "experts action set needs n >= 2");
    // l1 diameter of the basis-vector embedding.
    return ActionSet(Kind::Experts, n, {}, 2.0);
}

ActionSet ActionSet::finite_points(std::vector<std::vector<double>> points) {
    if (points.empty()) throw Error("domain", "finite point action set must be nonempty");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw Error("shape", "action points must have dimension >= 1");
    for (const auto& p : points) {
        if (p.size() != dim) throw Error("shape", "action points must share one dimension");
    }
    double diam = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < dim; ++k) d += std::abs(points[i][k] - points[j][k]);
            diam = std::max(diam, d);
        }
    }
    return ActionSet(Kind::FinitePoints, dim, std::move(points), diam);
}

ActionSet ActionSet::basis_points(std::size_t n) {
    if (n < 2) throw Error("domain", "basis embedding needs n >= 2");
    std::vector<std::vector<double>> pts(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) pts[i][i] = 1.0;
    return finite_points(std::move(pts));
}

std::size_t ActionSet::size() const {
    return kind_ == Kind::Experts ? dim_ : points_.size();
}

double ActionSet::action_cost(std::size_t a, std::span<const double> v) const {
    if (v.size() != dim_) throw Error("shape", "cost vector dimension mismatch");
    if (a >= size()) throw Error("domain", "action index out of range");
    if (kind_ == Kind::Experts) return v[a];
    const auto& p = points_[a];
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) s += p[k] * v[k];
    return s;
}

std::size_t ActionSet::argmin(std::span<const double> v) const {
    const std::size_t m = size();
    std::size_t best = 0;
    double best_cost = action_cost(0, v);
    for (std::size_t a = 1; a < m; ++a) {
        const double c = action_cost(a, v);
        if (c < best_cost) {
            best = a;
            best_cost = c;
        }
    }
    return best;
}

void KahanVector::add(std::span<const double> v) {
    if (v.size() != acc_.size()) throw Error("shape", "accumulator dimension mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) acc_[i].add(v[i]);
}

std::vector<double> KahanVector::value() const {
    std::vector<double> out(acc_.size());
    for (std::size_t i = 0; i < acc_.size(); ++i) out[i] = acc_[i].value();
    return out;
}

double Transcript::total_cost() const {
    KahanSum s;
    for (double c : costs_incurred) s.add(c);
    return s.value();
}

std::pair<std::size_t, double> best_in_hindsight(const std::vector<CostVector>& sequence,
                                                 const ActionSet& actions) {
    if (sequence.empty()) throw Error("empty", "best_in_hindsight needs T >= 1");
    KahanVector total(actions.dim());
    for (const auto& c : sequence) {
        if (c.dim() != actions.dim()) throw Error("shape", "sequence dimension mismatch");
        total.add(c.values());
    }
    const auto sums = total.value();
    const std::size_t best = actions.argmin(sums);
    return {best, actions.action_cost(best, sums)};
}

RegretReport regret(const Transcript& transcript, const std::vector<CostVector>& sequence,
                    const ActionSet& actions) {
    if (transcript.length() != sequence.size()) {
        throw Error("shape", "transcript and sequence lengths differ");
    }
    const auto [best, best_cost] = best_in_hindsight(sequence, actions);
    const double total = transcript.total_cost();
    return RegretReport{total, best_cost, best, total - best_cost};
}

}  // namespace repol
