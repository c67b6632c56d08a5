#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repol {

// Counter-based random stream. Output i is a pure function of (key, i),
// so a stream reconstructed from the same key replays identically.
// Single-owner mutable while drawing; cheap to copy.
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64();
    double next_unit();       // uniform in [0, 1)
    double next_unit_open();  // uniform in (0, 1]

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Seed-deterministic tree of named random streams: the shared internal
// randomness of a run. fork(label) is a pure function of
// (master_seed, path, label); distinct paths never alias. Immutable.
class Bundle {
public:
    explicit Bundle(std::uint64_t master_seed);

    Bundle fork(std::string_view label) const;
    Bundle fork(std::uint64_t index) const;

    Stream stream() const { return Stream(key_); }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t key() const { return key_; }
    const std::vector<std::string>& path() const { return path_; }

private:
    Bundle(std::uint64_t master_seed, std::uint64_t key, std::vector<std::string> path)
        : master_seed_(master_seed), key_(key), path_(std::move(path)) {}

    std::uint64_t master_seed_;
    std::uint64_t key_;
    std::vector<std::string> path_;
};

// Each coordinate independently uniform in [0, width). Uniform draws use
// a fork disjoint from the geometric sampler's, so adding calls of one
// kind never perturbs streams of the other.
std::vector<double> sample_uniform_box(const Bundle& bundle, std::size_t n, double width);

// Geometric on {1, 2, ...} with Pr[X >= t] = (1 - eps)^(t-1), via inverse
// CDF X = 1 + floor(ln(U) / ln(1 - eps)), U ~ Unif(0, 1]. eps = 1 always
// yields 1.
std::int64_t sample_geometric(const Bundle& bundle, double eps);

// Stream-based variants for tight loops.
double uniform_in(Stream& s, double width);
std::int64_t geometric(Stream& s, double eps);

}  // namespace repol
