#include "repol/stats.hpp"

#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/math/distributions/beta.hpp>

#include "repol/errors.hpp"

namespace repol {

BinomialInterval clopper_pearson(long successes, long trials, double confidence) {
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    if (successes < 0 || successes > trials) throw Error("domain", "successes out of range");
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw Error("domain", "confidence must lie in (0, 1)");
    }
    const double alpha = 1.0 - confidence;
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    BinomialInterval ci{0.0, 1.0};
    if (successes > 0) {
        boost::math::beta_distribution<double> lo(k, n - k + 1.0);
        ci.low = boost::math::quantile(lo, alpha / 2.0);
    }
    if (successes < trials) {
        boost::math::beta_distribution<double> hi(k + 1.0, n - k);
        ci.high = boost::math::quantile(hi, 1.0 - alpha / 2.0);
    }
    return ci;
}

MeanSummary mean_and_se(std::span<const double> samples) {
    if (samples.empty()) throw Error("empty", "mean of an empty sample");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double mean = sum / n;
    if (samples.size() == 1) return MeanSummary{mean, 0.0};
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double var = ss / (n - 1.0);
    return MeanSummary{mean, std::sqrt(var / n)};
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) workers = 1;
    if (workers > count) workers = static_cast<unsigned>(count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace repol
