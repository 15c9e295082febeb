#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace swarmlab {

// Two-sided 95% standard normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

// Welford accumulator. Add values in a fixed order for reproducible output.
class RunningStats {
public:
    void add(double value) noexcept;

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    // Unbiased (n - 1) sample variance; 0 for fewer than two values.
    double variance() const noexcept;
    double standard_error() const noexcept;
    double ci_half_width_95() const noexcept { return kZ95 * standard_error(); }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double value) const noexcept { return lower <= value && value <= upper; }
};

// Percentile bootstrap interval for the mean. Deterministic for a given seed.
Interval bootstrap_mean_ci(std::span<const double> sample, std::size_t resamples,
                           double confidence, std::uint64_t seed);

}  // namespace swarmlab
