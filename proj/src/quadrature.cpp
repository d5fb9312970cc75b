#include "imdd/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "imdd/error.hpp"

namespace imdd::numeric {

namespace {

// Kronrod nodes on [0, 1] (symmetric), with 15-point Kronrod and embedded
// 7-point Gauss weights.
constexpr std::array<double, 8> kNodes{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                         0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                         0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                         0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double kron = kKronrod[7] * fc;
    double gauss = kGauss[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double sum = f(mid - dx) + f(mid + dx);
        kron += kKronrod[i] * sum;
        if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
    }
    return {a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, std::size_t max_intervals) {
    QuadratureResult res;
    if (a == b) return res;

    std::priority_queue<Panel> work;
    Panel first = gk15(f, a, b);
    res.evaluations = 15;
    double value = first.value;
    double error = first.error;
    work.push(first);

    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (work.size() >= max_intervals) {
            std::ostringstream os;
            os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate " << value
               << ", error " << error << " after " << work.size() << " intervals";
            throw Error(Errc::integration_failure, os.str());
        }
        const Panel worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        res.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }

    // Re-sum to avoid drift from the running updates.
    value = 0.0;
    error = 0.0;
    while (!work.empty()) {
        value += work.top().value;
        error += work.top().error;
        work.pop();
    }
    res.value = value;
    res.error = error;
    return res;
}

double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
    if (pred(lo)) return lo;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace imdd::numeric
