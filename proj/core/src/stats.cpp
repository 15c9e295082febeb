#include "swarmlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "swarmlab/errors.hpp"
#include "swarmlab/rng.hpp"

namespace swarmlab {

void RunningStats::add(double value) noexcept {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
}

double RunningStats::variance() const noexcept {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::standard_error() const noexcept {
    return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

Interval bootstrap_mean_ci(std::span<const double> sample, std::size_t resamples, double confidence,
                           std::uint64_t seed) {
    if (sample.empty()) throw InvalidParameter("bootstrap needs a non-empty sample");
    if (resamples < 2) throw InvalidParameter("bootstrap needs at least two resamples");
    if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidParameter("confidence must lie in (0, 1)");

    Rng rng(seed);
    std::vector<double> means;
    means.reserve(resamples);
    const auto n = sample.size();
    for (std::size_t b = 0; b < resamples; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += sample[rng.below(n)];
        means.push_back(sum / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());

    const double tail = (1.0 - confidence) / 2.0;
    const auto at = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
        return means[std::min(idx, resamples - 1)];
    };
    return {at(tail), at(1.0 - tail)};
}

}  // namespace swarmlab
