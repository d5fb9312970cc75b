#include "imdd/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace imdd {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::unsupported_basis: return "unsupported basis";
        case Errc::degenerate_constellation: return "degenerate constellation";
        case Errc::invalid_symbol: return "invalid symbol";
        case Errc::invalid_parameter: return "invalid parameter";
        case Errc::normalization_required: return "normalization required";
        case Errc::solver_failure: return "solver failure";
        case Errc::integration_failure: return "integration failure";
        case Errc::calibration_failure: return "calibration failure";
        case Errc::parse_error: return "parse error";
        case Errc::usage_error: return "usage error";
    }
    return "error";
}

const char* to_string(BasisKind kind) noexcept {
    switch (kind) {
        case BasisKind::DC: return "DC";
        case BasisKind::COS_HALF: return "COS_HALF";
        case BasisKind::COS_FULL: return "COS_FULL";
        case BasisKind::SIN_FULL: return "SIN_FULL";
    }
    return "?";
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "DC") return BasisKind::DC;
    if (name == "COS_HALF") return BasisKind::COS_HALF;
    if (name == "COS_FULL") return BasisKind::COS_FULL;
    if (name == "SIN_FULL") return BasisKind::SIN_FULL;
    throw Error(Errc::unsupported_basis, "unknown basis kind '" + name + "'");
}

double subcarrier_cycles(BasisKind kind) noexcept {
    switch (kind) {
        case BasisKind::DC: return 0.0;
        case BasisKind::COS_HALF: return 0.5;
        case BasisKind::COS_FULL:
        case BasisKind::SIN_FULL: return 1.0;
    }
    return 0.0;
}

double basis_value(BasisKind kind, double t, double symbol_period) noexcept {
    if (t < 0.0 || t >= symbol_period) return 0.0;
    const double phase = 2.0 * std::numbers::pi * subcarrier_cycles(kind) * t / symbol_period;
    const double amp = std::sqrt(2.0 / symbol_period);
    switch (kind) {
        case BasisKind::DC: return std::sqrt(1.0 / symbol_period);
        case BasisKind::COS_HALF:
        case BasisKind::COS_FULL: return amp * std::cos(phase);
        case BasisKind::SIN_FULL: return amp * std::sin(phase);
    }
    return 0.0;
}

BasisConfig::BasisConfig(double symbol_period, std::vector<BasisKind> kinds)
    : symbol_period_(symbol_period), kinds_(std::move(kinds)) {
    using enum BasisKind;
    if (!(symbol_period_ > 0.0) || !std::isfinite(symbol_period_))
        throw Error(Errc::invalid_parameter, "symbol period must be positive");
    const bool ok = kinds_ == std::vector{DC} || kinds_ == std::vector{DC, COS_HALF} ||
                    kinds_ == std::vector{DC, COS_FULL, SIN_FULL};
    if (!ok) {
        std::ostringstream os;
        os << "basis [";
        for (std::size_t i = 0; i < kinds_.size(); ++i) os << (i ? "," : "") << to_string(kinds_[i]);
        os << "] is not one of [DC], [DC,COS_HALF], [DC,COS_FULL,SIN_FULL]";
        throw Error(Errc::unsupported_basis, os.str());
    }
}

BasisConfig BasisConfig::pam(double symbol_period) { return {symbol_period, {BasisKind::DC}}; }

BasisConfig BasisConfig::two_dim(double symbol_period) {
    return {symbol_period, {BasisKind::DC, BasisKind::COS_HALF}};
}

BasisConfig BasisConfig::raised_qam(double symbol_period) {
    return {symbol_period, {BasisKind::DC, BasisKind::COS_FULL, BasisKind::SIN_FULL}};
}

SignalPoint::SignalPoint(std::initializer_list<double> coords)
    : SignalPoint(std::span<const double>(coords.begin(), coords.size())) {}

SignalPoint::SignalPoint(std::span<const double> coords) : size_(coords.size()) {
    if (coords.empty() || coords.size() > kMaxDims)
        throw Error(Errc::unsupported_basis,
                    "signal points must have 1 to 3 coordinates, got " + std::to_string(coords.size()));
    std::copy(coords.begin(), coords.end(), coords_.begin());
}

double SignalPoint::ac_norm() const noexcept {
    double acc = 0.0;
    for (std::size_t i = 1; i < size_; ++i) acc += coords_[i] * coords_[i];
    return std::sqrt(acc);
}

double SignalPoint::norm_squared() const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < size_; ++i) acc += coords_[i] * coords_[i];
    return acc;
}

double distance(const SignalPoint& a, const SignalPoint& b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Constellation::Constellation(std::string name, BasisConfig basis, std::vector<SignalPoint> points,
                             double admissibility_tol)
    : name_(std::move(name)), basis_(std::move(basis)), points_(std::move(points)) {
    if (points_.empty()) throw Error(Errc::degenerate_constellation, "constellation has no points");
    double scale = 1.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (p.size() != basis_.dims())
            throw Error(Errc::unsupported_basis, "point " + std::to_string(i) + " has " +
                                                     std::to_string(p.size()) + " coordinates, basis has " +
                                                     std::to_string(basis_.dims()));
        for (double v : p.coords()) {
            if (!std::isfinite(v))
                throw Error(Errc::invalid_parameter, "point " + std::to_string(i) + " is not finite");
            scale = std::max(scale, std::abs(v));
        }
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!is_admissible(points_[i], admissibility_tol * scale))
            throw Error(Errc::invalid_parameter,
                        "point " + std::to_string(i) + " lies outside the nonnegativity cone");
        for (std::size_t j = 0; j < i; ++j)
            if (points_[i] == points_[j])
                throw Error(Errc::degenerate_constellation,
                            "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
}

Constellation Constellation::renamed(std::string name) const {
    Constellation out = *this;
    out.name_ = std::move(name);
    return out;
}

Constellation Constellation::with_basis(BasisConfig basis) const {
    return {name_, std::move(basis), points_};
}

Constellation Constellation::scaled(double factor) const {
    if (!(factor > 0.0)) throw Error(Errc::invalid_parameter, "scale factor must be positive");
    Constellation out = *this;
    for (auto& p : out.points_)
        for (std::size_t k = 0; k < p.size(); ++k) p[k] *= factor;
    return out;
}

double cone_margin(const SignalPoint& p) {
    if (p.size() == 0 || p.size() > kMaxDims)
        throw Error(Errc::unsupported_basis, "admissibility is defined for 1 to 3 dimensions");
    return p[0] - std::numbers::sqrt2 * p.ac_norm();
}

bool is_admissible(const SignalPoint& p, double tol) { return cone_margin(p) >= -tol; }

double min_distance(const Constellation& c) {
    if (c.size() < 2)
        throw Error(Errc::degenerate_constellation, "minimum distance needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    const auto& pts = c.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j]));
    return best;
}

Constellation normalize_unit_dmin(const Constellation& c) { return c.scaled(1.0 / min_distance(c)); }

double average_optical_coeff(const Constellation& c) {
    double acc = 0.0;
    for (const auto& p : c.points()) acc += p[0];
    return acc / static_cast<double>(c.size());
}

double peak_optical_coeff(const Constellation& c) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : c.points()) best = std::max(best, p[0] + std::numbers::sqrt2 * p.ac_norm());
    return best;
}

double mean_squared_norm(const Constellation& c) {
    double acc = 0.0;
    for (const auto& p : c.points()) acc += p.norm_squared();
    return acc / static_cast<double>(c.size());
}

std::vector<double> synthesize_waveform(const Constellation& c, std::span<const std::size_t> symbols,
                                        std::size_t samples_per_symbol, SampleGrid grid) {
    if (samples_per_symbol < 2)
        throw Error(Errc::invalid_parameter, "samples_per_symbol must be at least 2");
    const double T = c.basis().symbol_period();
    const auto& kinds = c.basis().kinds();
    const double offset = grid == SampleGrid::midpoint ? 0.5 : 0.0;

    // One symbol's worth of basis samples, reused for every symbol.
    std::vector<double> table(kinds.size() * samples_per_symbol);
    for (std::size_t k = 0; k < kinds.size(); ++k)
        for (std::size_t j = 0; j < samples_per_symbol; ++j)
            table[k * samples_per_symbol + j] =
                basis_value(kinds[k], (static_cast<double>(j) + offset) * T / samples_per_symbol, T);

    std::vector<double> out(symbols.size() * samples_per_symbol, 0.0);
    for (std::size_t n = 0; n < symbols.size(); ++n) {
        if (symbols[n] >= c.size())
            throw Error(Errc::invalid_symbol, "symbol " + std::to_string(symbols[n]) + " at position " +
                                                  std::to_string(n) + " exceeds M-1 = " +
                                                  std::to_string(c.size() - 1));
        const auto& p = c[symbols[n]];
        double* dst = out.data() + n * samples_per_symbol;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const double* row = table.data() + k * samples_per_symbol;
            for (std::size_t j = 0; j < samples_per_symbol; ++j) dst[j] += p[k] * row[j];
        }
    }
    return out;
}

namespace {

using Key = std::array<long long, kMaxDims>;

Key quantize(const SignalPoint& p, double sign2) {
    Key key{};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double v = i == 1 ? sign2 * p[i] : p[i];
        key[i] = std::llround(v * 1e7);
    }
    return key;
}

std::vector<std::pair<Key, SignalPoint>> sorted_keys(const Constellation& c, double sign2) {
    std::vector<std::pair<Key, SignalPoint>> out;
    out.reserve(c.size());
    for (const auto& p : c.points()) {
        SignalPoint q = p;
        q[1] *= sign2;
        out.emplace_back(quantize(p, sign2), q);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

Constellation canonicalize(const Constellation& c) {
    if (c.dims() != 2) throw Error(Errc::unsupported_basis, "canonicalize is defined for 2-D constellations");
    auto plain = sorted_keys(c, 1.0);
    auto reflected = sorted_keys(c, -1.0);
    const bool use_reflection =
        std::lexicographical_compare(reflected.begin(), reflected.end(), plain.begin(), plain.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto& chosen = use_reflection ? reflected : plain;
    std::vector<SignalPoint> pts;
    pts.reserve(chosen.size());
    for (const auto& [key, p] : chosen) pts.push_back(p);
    return {c.name(), c.basis(), std::move(pts)};
}

double max_coordinate_deviation(const Constellation& a, const Constellation& b) {
    if (a.size() != b.size() || a.dims() != b.dims())
        throw Error(Errc::invalid_parameter, "constellations differ in size or dimension");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a.dims(); ++k) worst = std::max(worst, std::abs(a[i][k] - b[i][k]));
    return worst;
}

}  // namespace imdd
