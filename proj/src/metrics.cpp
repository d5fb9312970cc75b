#include "imdd/metrics.hpp"

#include <cmath>
#include <numbers>

#include "imdd/spectral.hpp"

namespace imdd {

namespace {

void require_unit_dmin(const Constellation& c) {
    if (c.size() < 2) throw Error(Errc::degenerate_constellation, "gains need M >= 2");
    const double d = min_distance(c);
    if (std::abs(d - 1.0) > 1e-9)
        throw Error(Errc::normalization_required,
                    "gains are defined on unit-d_min constellations; d_min = " + std::to_string(d));
}

}  // namespace

double avg_power_gain_db(const Constellation& c) {
    require_unit_dmin(c);
    const double bits = std::log2(static_cast<double>(c.size()));
    return 10.0 * std::log10(0.5 * std::sqrt(bits) / average_optical_coeff(c));
}

double peak_power_gain_db(const Constellation& c) {
    require_unit_dmin(c);
    const double bits = std::log2(static_cast<double>(c.size()));
    return 10.0 * std::log10(std::sqrt(bits) / peak_optical_coeff(c));
}

GainReport gain_report(const Constellation& c, std::span<const double> Ks) {
    GainReport r;
    r.avg_gain_db = avg_power_gain_db(c);
    r.peak_gain_db = peak_power_gain_db(c);
    if (!Ks.empty()) {
        const auto sp = build_spectrum(c);
        for (double K : Ks) r.eta_at_K[K] = spectral_efficiency(sp, K);
    }
    return r;
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double predicted_ser(const Constellation& c, double sigma) {
    if (!(sigma > 0.0)) throw Error(Errc::invalid_parameter, "sigma must be positive");
    if (c.size() < 2) throw Error(Errc::degenerate_constellation, "SER needs M >= 2");
    double acc = 0.0;
    const auto& pts = c.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j) acc += q_function(distance(pts[i], pts[j]) / (2.0 * sigma));
    return acc / static_cast<double>(pts.size());
}

double nearest_neighbor_ser(const Constellation& c, double sigma) {
    if (!(sigma > 0.0)) throw Error(Errc::invalid_parameter, "sigma must be positive");
    const double dmin = min_distance(c);
    std::size_t pairs = 0;
    const auto& pts = c.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j && distance(pts[i], pts[j]) <= dmin * (1.0 + 1e-9)) ++pairs;
    return static_cast<double>(pairs) / static_cast<double>(pts.size()) * q_function(dmin / (2.0 * sigma));
}

}  // namespace imdd
