#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace imdd::detail {

/// f(x, grad) returns the objective and writes the gradient.
using ValueAndGradient = std::function<double(std::span<const double>, std::span<double>)>;

struct LbfgsOptions {
    int max_iterations = 2000;
    int history = 8;
    double gradient_tol = 1e-12;
    double relative_tol = 1e-15;
};

struct LbfgsResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Limited-memory BFGS with Armijo backtracking; x is updated in place.
LbfgsResult lbfgs_minimize(const ValueAndGradient& fg, std::vector<double>& x, const LbfgsOptions& opts);

}  // namespace imdd::detail
