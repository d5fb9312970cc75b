#include "lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace imdd::detail {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double inf_norm(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

struct Pair {
    std::vector<double> s, y;
    double rho;
};

}  // namespace

LbfgsResult lbfgs_minimize(const ValueAndGradient& fg, std::vector<double>& x, const LbfgsOptions& opts) {
    const std::size_t n = x.size();
    std::vector<double> g(n), d(n), x_new(n), g_new(n), alpha(static_cast<std::size_t>(opts.history));
    std::deque<Pair> history;

    LbfgsResult res;
    double f = fg(x, g);
    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        if (inf_norm(g) <= opts.gradient_tol) {
            res.converged = true;
            break;
        }

        // Two-loop recursion for d = -H g.
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        for (std::size_t k = history.size(); k-- > 0;) {
            alpha[k] = history[k].rho * dot(history[k].s, d);
            for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * history[k].y[i];
        }
        if (!history.empty()) {
            const auto& last = history.back();
            const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (auto& v : d) v *= gamma;
        }
        for (std::size_t k = 0; k < history.size(); ++k) {
            const double beta = history[k].rho * dot(history[k].y, d);
            for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * history[k].s[i];
        }

        double slope = dot(g, d);
        if (!(slope < 0.0)) {
            history.clear();
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            slope = dot(g, d);
        }

        double step = history.empty() ? std::min(1.0, 1.0 / std::max(inf_norm(g), 1e-300)) : 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
            f_new = fg(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No descent along d at machine precision: treat as converged.
            res.converged = history.empty();
            if (!history.empty()) {
                history.clear();
                continue;
            }
            break;
        }

        Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            p.s[i] = x_new[i] - x[i];
            p.y[i] = g_new[i] - g[i];
        }
        const double sy = dot(p.s, p.y);
        if (sy > 1e-16 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y))) {
            p.rho = 1.0 / sy;
            history.push_back(std::move(p));
            if (static_cast<int>(history.size()) > opts.history) history.pop_front();
        }

        const double change = std::abs(f - f_new);
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        if (change <= opts.relative_tol * std::max(1.0, std::abs(f))) {
            res.converged = true;
            ++res.iterations;
            break;
        }
    }
    res.value = f;
    return res;
}

}  // namespace imdd::detail
