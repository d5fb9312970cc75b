#include "imdd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "imdd/quadrature.hpp"

namespace imdd {

using cplx = std::complex<double>;

double sinc(double x) noexcept {
    const double px = std::numbers::pi * x;
    if (std::abs(x) < 1e-6) return 1.0 - px * px / 6.0;
    return std::sin(px) / px;
}

namespace {

/// sinc(x) e^{-j pi x}: transform of rect on [0, 1) at normalized frequency x.
cplx shifted_sinc(double x) { return sinc(x) * std::polar(1.0, -std::numbers::pi * x); }

/// Transform of a basis function at x = fT, divided by sqrt(T).
cplx normalized_basis_transform(BasisKind kind, double x) {
    const double c = subcarrier_cycles(kind);
    switch (kind) {
        case BasisKind::DC: return shifted_sinc(x);
        case BasisKind::COS_HALF:
        case BasisKind::COS_FULL: return std::numbers::sqrt2 / 2.0 * (shifted_sinc(x - c) + shifted_sinc(x + c));
        case BasisKind::SIN_FULL:
            return cplx(0.0, -std::numbers::sqrt2 / 2.0) * (shifted_sinc(x - c) - shifted_sinc(x + c));
    }
    throw Error(Errc::unsupported_basis, "no transform for this basis kind");
}

/// sqrt(T) times the basis value at t = 0 and at t -> T from the left.
std::pair<double, double> edge_values(BasisKind kind) {
    switch (kind) {
        case BasisKind::DC: return {1.0, 1.0};
        case BasisKind::COS_HALF: return {std::numbers::sqrt2, -std::numbers::sqrt2};
        case BasisKind::COS_FULL: return {std::numbers::sqrt2, std::numbers::sqrt2};
        case BasisKind::SIN_FULL: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

}  // namespace

cplx basis_transform(BasisKind kind, double f, double symbol_period) {
    return std::sqrt(symbol_period) * normalized_basis_transform(kind, f * symbol_period);
}

cplx signal_transform(const SignalPoint& p, const BasisConfig& basis, double f) {
    if (p.size() != basis.dims()) throw Error(Errc::unsupported_basis, "point dimension does not match the basis");
    cplx acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += p[k] * basis_transform(basis.kinds()[k], f, basis.symbol_period());
    return acc;
}

double SpectrumProfile::normalized_psd(double x) const {
    const auto& kinds = constellation_.basis().kinds();
    std::array<cplx, kMaxDims> b{};
    for (std::size_t k = 0; k < kinds.size(); ++k) b[k] = normalized_basis_transform(kinds[k], x);

    const std::size_t m = constellation_.size();
    std::vector<cplx> s(m);
    cplx mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < kinds.size(); ++k) s[i] += constellation_[i][k] * b[k];
        mean += s[i];
    }
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (const auto& v : s) var += std::norm(v - mean);
    return var / static_cast<double>(m);
}

double SpectrumProfile::continuous_psd(double f) const { return normalized_psd(f * symbol_period()); }

double SpectrumProfile::normalized_cumulative(double x) const {
    x = std::abs(x);
    if (x >= static_cast<double>(kPanels)) {
        // Inside the asymptotic region: approximate the remainder by the
        // envelope, which is what tail_ integrates to infinity.
        const double n = static_cast<double>(kPanels);
        return cumulative_.back() + tail_ * (1.0 - n / x);
    }
    const auto n = static_cast<std::size_t>(x);
    return cumulative_[n] + partial_integral(static_cast<double>(n), x);
}

double SpectrumProfile::partial_integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const double scale = std::max(1e-300, mean_squared_norm(constellation_));
    return numeric::integrate([this](double u) { return normalized_psd(u); }, lo, hi, 1e-15 * scale).value;
}

double SpectrumProfile::continuous_power(double W) const {
    return 2.0 * normalized_cumulative(W * symbol_period()) / symbol_period();
}

double SpectrumProfile::line_weight(int k) const {
    for (const auto& line : lines_)
        if (std::abs(line.frequency * symbol_period() - k) < 1e-9) return line.weight;
    return 0.0;
}

double SpectrumProfile::in_band_power(double W) const {
    const double x = std::abs(W) * symbol_period();
    double acc = continuous_power(std::abs(W));
    for (const auto& line : all_lines_)
        if (std::abs(line.frequency) * symbol_period() <= x * (1.0 + 1e-12)) acc += line.weight;
    return acc;
}

SpectrumProfile build_spectrum(const Constellation& c, int k_max) {
    if (k_max < 1) throw Error(Errc::invalid_parameter, "k_max must be positive");
    SpectrumProfile sp(c);
    const double T = c.basis().symbol_period();
    const auto& kinds = c.basis().kinds();
    const double msn = mean_squared_norm(c);
    const double scale = std::max(1e-300, msn);
    const double inv_m = 1.0 / static_cast<double>(c.size());

    // Lines: (1/T) |mean_i S_i(k/T) / sqrt(T)|^2. They are computed out to
    // the panel limit; k_max bounds only what is listed, and
    // |mean S(k/T)|^2 ~ 1/k^2 lets the remainder be summed in closed form.
    auto mean_transform = [&](double x) {
        cplx acc = 0.0;
        for (const auto& p : c.points())
            for (std::size_t k = 0; k < kinds.size(); ++k) acc += p[k] * normalized_basis_transform(kinds[k], x);
        return acc * inv_m;
    };
    const auto n_panels = static_cast<int>(SpectrumProfile::kPanels);
    const int listed = std::min(k_max, n_panels);
    const double negligible = 1e-24 * scale / T;
    for (int k = -n_panels; k <= n_panels; ++k) {
        const double w = std::norm(mean_transform(static_cast<double>(k))) / T;
        if (w > negligible) sp.lines_.push_back({k / T, w});
    }

    // Boundary values of each waveform drive the 1/f^2 asymptotics of both
    // the continuous part and the line weights.
    double mean_a = 0.0, mean_b = 0.0;
    std::vector<std::pair<double, double>> edges;
    for (const auto& p : c.points()) {
        double a = 0.0, b = 0.0;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const auto [ek0, ekT] = edge_values(kinds[k]);
            a += p[k] * ek0;
            b += p[k] * ekT;
        }
        edges.emplace_back(a, b);
        mean_a += a * inv_m;
        mean_b += b * inv_m;
    }
    double edge_var = 0.0;
    for (const auto& [a, b] : edges) edge_var += ((a - mean_a) * (a - mean_a) + (b - mean_b) * (b - mean_b)) * inv_m;
    const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    const double n = static_cast<double>(n_panels);
    sp.tail_ = edge_var / (four_pi2 * n);
    // Each omitted line pair (+-k) adds 2 (mean_a - mean_b)^2 / (4 pi^2 k^2).
    const double line_tail = 2.0 * (mean_a - mean_b) * (mean_a - mean_b) / (four_pi2 * (n + 0.5)) / T;

    sp.cumulative_.assign(SpectrumProfile::kPanels + 1, 0.0);
    auto g = [&sp](double u) { return sp.normalized_psd(u); };
    for (std::size_t i = 0; i < SpectrumProfile::kPanels; ++i) {
        const double lo = static_cast<double>(i);
        sp.cumulative_[i + 1] = sp.cumulative_[i] + numeric::integrate(g, lo, lo + 1.0, 1e-15 * scale).value;
    }

    double line_sum = 0.0;
    for (const auto& line : sp.lines_) line_sum += line.weight;
    sp.total_power_ = 2.0 * (sp.cumulative_.back() + sp.tail_) / T + line_sum + line_tail;

    // Keep the full line set for bandwidth work, but expose only |k| <= k_max.
    sp.all_lines_ = sp.lines_;
    std::erase_if(sp.lines_, [&](const SpectralLine& l) { return std::abs(l.frequency * T) > listed + 0.5; });
    return sp;
}

double total_power(const SpectrumProfile& sp) { return sp.total_power(); }

double fractional_bandwidth(const SpectrumProfile& sp, const BandwidthQuery& q) {
    if (!(q.K > 0.0 && q.K < 1.0))
        throw Error(Errc::invalid_parameter, "K must lie in (0, 1), got " + std::to_string(q.K));
    if (!(q.tolerance > 0.0)) throw Error(Errc::invalid_parameter, "bandwidth tolerance must be positive");

    const double T = sp.symbol_period();
    const double target = q.K * sp.total_power();
    const auto& lines = sp.all_lines();

    // Line power with |k| <= n, for integer n.
    auto lines_within = [&](double n) {
        double acc = 0.0;
        for (const auto& l : lines)
            if (std::abs(l.frequency * T) <= n + 1e-9) acc += l.weight;
        return acc;
    };

    if (lines_within(0.0) >= target) return 0.0;

    const std::size_t n_panels = SpectrumProfile::kPanels;
    for (std::size_t n = 0; n < n_panels; ++n) {
        const double lo = static_cast<double>(n);
        const double base_lines = lines_within(lo);
        const double end_power = 2.0 * sp.cumulative(n + 1) / T + lines_within(lo + 1.0);
        if (end_power < target) continue;

        // Continuous power alone reaching the target inside the panel; if it
        // does not, the line at n + 1 closes the gap exactly at its frequency.
        const double before_jump = 2.0 * sp.cumulative(n + 1) / T + base_lines;
        if (before_jump < target) return (lo + 1.0) / T;

        const double base = 2.0 * sp.cumulative(n) / T + base_lines;
        const double x = numeric::bisect_threshold(
            [&](double u) { return base + 2.0 * sp.partial_integral(lo, u) / T >= target; }, lo, lo + 1.0,
            q.tolerance);
        return x / T;
    }
    std::ostringstream os;
    os << "K = " << q.K << " is not reached within " << n_panels << "/T; in-band fraction at the limit is "
       << (2.0 * sp.cumulative(n_panels) / T + lines_within(static_cast<double>(n_panels))) / sp.total_power();
    throw Error(Errc::integration_failure, os.str());
}

double spectral_efficiency(const SpectrumProfile& sp, double K) {
    const auto& c = sp.constellation();
    if (c.size() < 2) throw Error(Errc::degenerate_constellation, "spectral efficiency needs M >= 2");
    const double W = fractional_bandwidth(sp, {K});
    if (W == 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(static_cast<double>(c.size())) / (W * sp.symbol_period());
}

double spectral_efficiency(const Constellation& c, double K) { return spectral_efficiency(build_spectrum(c), K); }

}  // namespace imdd
