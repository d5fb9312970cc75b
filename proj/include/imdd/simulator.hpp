#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "imdd/core.hpp"

namespace imdd {

struct ChannelConfig {
    /// Per-dimension noise standard deviation at the correlator output
    /// (sigma^2 = N0 / 2).
    double noise_sigma = 0.1;
    std::uint64_t n_symbols = 1'000'000;
    std::uint64_t seed = 0;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on it.
    unsigned threads = 0;
    /// Also count bit errors under a binary-reflected Gray labeling of the
    /// symbol indices. This labeling is a convenience, not part of the
    /// format definitions.
    bool gray_bit_errors = false;

    void validate() const;
};

struct SimReport {
    double ser = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t bit_errors = 0;  // only with gray_bit_errors
    double ber = 0.0;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Trials are generated in blocks of this many symbols, block b drawing from
/// its own stream seeded by (seed, b).
inline constexpr std::size_t kSimBlockSize = 1 << 16;

/// Nearest point in Euclidean distance; ties go to the lowest index.
std::size_t detect(std::span<const double> y, const Constellation& c);

/// Vector channel: uniform symbols, i.i.d. N(0, sigma^2) noise per dimension,
/// minimum-distance detection.
SimReport run_vector(const Constellation& c, const ChannelConfig& ch);

/// Sampled-waveform channel: synthesizes x(t) on a midpoint grid, adds white
/// Gaussian samples of std sigma sqrt(n / T), correlates against the sampled
/// basis and detects. Requires samples_per_symbol >= 8.
SimReport run_waveform(const Constellation& c, const ChannelConfig& ch, std::size_t samples_per_symbol);

/// Energy per bit in signal-space units: mean_squared_norm / log2 M.
double energy_per_bit(const Constellation& c);

}  // namespace imdd
