#pragma once

#include <map>
#include <span>

#include "imdd/core.hpp"

namespace imdd {

struct GainReport {
    double avg_gain_db = 0.0;
    double peak_gain_db = 0.0;
    std::map<double, double> eta_at_K;
};

/// Asymptotic average optical power gain over OOK at equal bit rate and
/// equal error probability: 10 log10(0.5 sqrt(log2 M) / E), E the mean
/// first coordinate of the unit-d_min constellation.
///
/// Equal high-SNR error probability pins d_min / sigma, so with unit d_min
/// the amplitude scale is common to every format. Equal bit rate sets the
/// symbol rate to R_b / log2 M, and the average optical power of a
/// unit-d_min format is E / sqrt(T) = E sqrt(R_b / log2 M). Dividing OOK's
/// (E = 1/2, M = 2) by it gives the expression above. Throws
/// Errc::normalization_required unless d_min = 1 to within 1e-9.
double avg_power_gain_db(const Constellation& c);

/// Same construction for peak power: 10 log10(sqrt(log2 M) / P), OOK's P = 1.
double peak_power_gain_db(const Constellation& c);

GainReport gain_report(const Constellation& c, std::span<const double> Ks);

/// Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x) noexcept;

/// Union bound (1/M) sum_i sum_{j != i} Q(|s_i - s_j| / (2 sigma)) on the
/// minimum-distance detector's symbol error rate; exact for M = 2.
double predicted_ser(const Constellation& c, double sigma);

/// Nearest-neighbour approximation: (1/M) sum_i N_i Q(d_min / (2 sigma)).
double nearest_neighbor_ser(const Constellation& c, double sigma);

}  // namespace imdd
