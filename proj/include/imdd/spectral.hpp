#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "imdd/core.hpp"

namespace imdd {

/// sin(pi x) / (pi x), with a series expansion near zero.
double sinc(double x) noexcept;

/// Fourier transform of a basis function supported on [0, T).
std::complex<double> basis_transform(BasisKind kind, double f, double symbol_period);

/// S_i(f) = sum_k s_ik Phi_k(f).
std::complex<double> signal_transform(const SignalPoint& p, const BasisConfig& basis, double f);

struct SpectralLine {
    double frequency;  // k / T
    double weight;     // power carried by the Dirac component
};

struct BandwidthQuery {
    double K = 0.9;
    /// Resolution of the solved W, in units of 1/T.
    double tolerance = 1e-9;
};

/// Power spectral density of x(t) for i.i.d. uniform symbols: a continuous
/// part plus Dirac lines at multiples of the symbol rate. Immutable once
/// built; all queries are const and thread-safe.
class SpectrumProfile {
public:
    const Constellation& constellation() const noexcept { return constellation_; }
    double symbol_period() const noexcept { return constellation_.basis().symbol_period(); }

    /// (1/T) [ (1/M) sum_i |S_i(f)|^2 - |mean_i S_i(f)|^2 ]
    double continuous_psd(double f) const;

    /// Lines at k/T for |k| <= k_max with nonzero weight (1/T^2)|mean S_i(k/T)|^2.
    const std::vector<SpectralLine>& lines() const noexcept { return lines_; }
    double line_weight(int k) const;

    /// Every line out to kPanels/T; this is the set the power integrals use.
    const std::vector<SpectralLine>& all_lines() const noexcept { return all_lines_; }

    /// Integral of the continuous part over [-W, W] plus lines with |f| <= W.
    double in_band_power(double W) const;

    /// Integral of the continuous part over [-W, W].
    double continuous_power(double W) const;

    double total_power() const noexcept { return total_power_; }

    /// Continuous part integrated on [0, panels/T]; beyond that the
    /// asymptotic 1/f^2 envelope is added in closed form.
    static constexpr std::size_t kPanels = 4096;

private:
    friend SpectrumProfile build_spectrum(const Constellation& c, int k_max);
    friend double fractional_bandwidth(const SpectrumProfile& sp, const BandwidthQuery& q);

    explicit SpectrumProfile(Constellation c) : constellation_(std::move(c)) {}

    double normalized_psd(double x) const;         // continuous part at f = x / T, times 1
    double normalized_cumulative(double x) const;  // integral of normalized_psd over [0, x]
    double cumulative(std::size_t n) const { return cumulative_[n]; }
    double partial_integral(double lo, double hi) const;

    Constellation constellation_;
    std::vector<SpectralLine> lines_;
    std::vector<SpectralLine> all_lines_;
    std::vector<double> cumulative_;  // cumulative_[n] = integral over [0, n] in x = fT
    double tail_ = 0.0;               // one-sided integral beyond kPanels, in x
    double total_power_ = 0.0;
};

SpectrumProfile build_spectrum(const Constellation& c, int k_max = 64);

/// Total power: both sides of the continuous part plus every line.
double total_power(const SpectrumProfile& sp);

/// Smallest W whose band [-W, W] holds at least K of the total power.
/// Returns 0 when the DC line alone reaches K.
double fractional_bandwidth(const SpectrumProfile& sp, const BandwidthQuery& q);

/// eta = log2(M) / (W T) bit/s/Hz.
double spectral_efficiency(const Constellation& c, double K);
double spectral_efficiency(const SpectrumProfile& sp, double K);

}  // namespace imdd
