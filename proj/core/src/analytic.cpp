#include "swarmlab/analytic.hpp"

#include <cmath>
#include <sstream>

#include "swarmlab/errors.hpp"

namespace swarmlab {

namespace {

double checked_load(const SwarmParams& params) {
    validate(params);
    const double x = params.load();
    if (x > kMaxLoad) {
        std::ostringstream msg;
        msg << "model exponent x = " << x << " exceeds " << kMaxLoad
            << "; content is effectively always available";
        throw OverflowError(msg.str(), x);
    }
    return x;
}

}  // namespace

double expected_busy_period(const SwarmParams& params) {
    const double x = checked_load(params);
    return std::expm1(x) / params.total_rate();
}

double bundling_factor(const SwarmParams& params) {
    return std::exp(checked_load(params)) + 1.0;
}

double availability_fraction(const SwarmParams& params) {
    const double busy = expected_busy_period(params);
    // B / (B + 1/r), scaled by r to keep 1/r out of the arithmetic.
    const double scaled = busy * params.publisher_rate;
    return scaled / (scaled + 1.0);
}

AnalyticReport analyze(const SwarmParams& params) {
    return {expected_busy_period(params), bundling_factor(params), availability_fraction(params)};
}

LimitDiagnostic limit_check(const SwarmParams& params, LimitKind kind, int steps) {
    validate(params);
    if (steps < 2) throw InvalidParameter("limit_check needs at least two steps");

    LimitDiagnostic diag;
    diag.kind = kind;
    double scale = 1.0;
    for (int k = 0; k < steps; ++k, scale *= 10.0) {
        SwarmParams p = params;
        double& knob = kind == LimitKind::mu_to_infinity ? p.download_rate : p.peer_rate;
        knob *= scale;
        diag.scaled.push_back(knob);
        try {
            const double b = expected_busy_period(p);
            diag.busy_periods.push_back(b);
            diag.residence_ratio.push_back(b / p.residence_mean());
        } catch (const OverflowError&) {
            diag.overflow_at = k;
            break;
        }
    }

    const auto& b = diag.busy_periods;
    bool monotone = true;
    for (std::size_t i = 1; i < b.size(); ++i) {
        const bool step_ok = kind == LimitKind::mu_to_infinity ? b[i] < b[i - 1] : b[i] > b[i - 1];
        monotone = monotone && step_ok;
    }
    // lambda = 0 does not move under scaling; that is not growth.
    if (kind == LimitKind::lambda_to_infinity && params.peer_rate == 0.0) monotone = false;
    diag.strictly_monotone = monotone;

    if (kind == LimitKind::mu_to_infinity) {
        diag.limit_consistent =
            monotone && !diag.residence_ratio.empty() && std::abs(diag.residence_ratio.back() - 1.0) <= 1e-6;
    } else {
        diag.limit_consistent = monotone;
    }
    return diag;
}

}  // namespace swarmlab
