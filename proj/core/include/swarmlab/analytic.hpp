#pragma once

#include <optional>
#include <vector>

#include "swarmlab/params.hpp"

namespace swarmlab {

// Largest model exponent x accepted before OverflowError is raised.
inline constexpr double kMaxLoad = 700.0;

// Expected busy period of the M/G/inf swarm,
//   B = (e^x - 1) / (r + lambda),  x = s (r + lambda) / mu.
// e^x - 1 goes through expm1 so B -> s/mu without cancellation as x -> 0.
double expected_busy_period(const SwarmParams& params);

// Growth of B when the file size doubles: (e^{2x} - 1) / (e^x - 1) = e^x + 1.
double bundling_factor(const SwarmParams& params);

// Long-run share of time the content is available, B / (B + 1/r).
// Only a publisher arrival can end an idle period, so the mean idle time is 1/r.
double availability_fraction(const SwarmParams& params);

struct AnalyticReport {
    double busy_period = 0.0;
    double bundling_factor = 0.0;
    double availability_fraction = 0.0;
};

AnalyticReport analyze(const SwarmParams& params);

enum class LimitKind { mu_to_infinity, lambda_to_infinity };

struct LimitDiagnostic {
    LimitKind kind = LimitKind::mu_to_infinity;
    // Value of the scaled parameter (mu or lambda) at each step, times 10^k.
    std::vector<double> scaled;
    // B at each step that evaluated without overflow.
    std::vector<double> busy_periods;
    // B / (s/mu) at each step; tends to 1 as mu grows.
    std::vector<double> residence_ratio;
    bool strictly_monotone = false;
    // mu_to_infinity: final B / (s/mu) within 1e-6 of 1.
    // lambda_to_infinity: B kept growing until the sequence ended.
    bool limit_consistent = false;
    // Step at which OverflowError stopped the sequence, if it did.
    std::optional<int> overflow_at;
};

// Walks the selected parameter through value * 10^k, k = 0..steps-1, and reports
// whether B behaves as the limiting argument predicts: decreasing to s/mu as
// mu grows, increasing without bound as lambda grows (overflow ends the walk).
LimitDiagnostic limit_check(const SwarmParams& params, LimitKind kind, int steps = 7);

}  // namespace swarmlab
