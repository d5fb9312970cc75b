#pragma once

#include <cstddef>
#include <functional>

namespace imdd::numeric {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Intervals are
/// bisected until each one's error estimate meets
/// max(abs_tol, rel_tol * |value|) scaled by its share of [a, b]. Throws
/// Errc::integration_failure when max_intervals is exceeded.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol = 1e-12, std::size_t max_intervals = 4096);

/// Smallest x in [lo, hi] (to within tol) with pred(x) true, for a predicate
/// that is false below some threshold and true above it. Requires pred(hi).
double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi, double tol);

}  // namespace imdd::numeric
