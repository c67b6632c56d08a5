#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace repol {

struct BinomialInterval {
    double low;
    double high;
};

// Exact (Clopper-Pearson) two-sided binomial interval at the given
// confidence level.
BinomialInterval clopper_pearson(long successes, long trials, double confidence);

struct MeanSummary {
    double mean;
    double se;  // standard error of the mean
};

MeanSummary mean_and_se(std::span<const double> samples);

// Runs body(i) for i in [0, count) across up to `threads` workers with a
// static partition. Deterministic as long as body(i) writes only to
// slot i of preallocated storage.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace repol
