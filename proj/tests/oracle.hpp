#pragma once

// Test-only reference values and routes independent of the library's
// expm1-based evaluation.

#include <cmath>
#include <functional>

namespace oracle {

// Frozen from a 40-digit arbitrary-precision evaluation of
// (e^{s(r+lambda)/mu} - 1) / (r + lambda).
inline constexpr double kBusyS1 = 1.933430768947122907942;        // s=1 mu=1 r=0.2 lambda=1
inline constexpr double kBusyS2 = 8.352646983868001376865;        // s=2 mu=1 r=0.2 lambda=1
inline constexpr double kBundleS1 = 4.320116922736547489531;      // e^1.2 + 1
inline constexpr double kHalfBundleS1 = 2.160058461368273744765;  // (e^1.2 + 1) / 2
inline constexpr double kAvailS1 = 0.2788562882327192120790;      // kBusyS1 / (kBusyS1 + 5)
inline constexpr double kLambdaHalfAvail = 2.460399058463684990433;  // s=mu=1 r=0.2: B = 1/r
inline constexpr double kLambdaAvail015 = 4.344769407435365025368;   // s=mu=1 r=0.01: fraction 0.15

// Power series sum_{k>=1} x^k / k! in long double, divided by c = r + lambda.
inline long double busy_period_series(long double s, long double mu, long double r, long double lambda) {
    const long double c = r + lambda;
    const long double x = s * c / mu;
    long double term = x;
    long double sum = 0.0L;
    for (int k = 1; k < 2000; ++k) {
        sum += term;
        if (term < sum * 1e-22L) break;
        term *= x / static_cast<long double>(k + 1);
    }
    return sum / c;
}

// Bisection for an increasing function f on [lo, hi] with f(lo) < 0 < f(hi).
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace oracle
