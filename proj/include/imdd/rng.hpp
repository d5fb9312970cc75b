#pragma once

#include <cstdint>

namespace imdd {

/// SplitMix64 (Steele, Lea, Flood). Used to derive independent stream seeds
/// and as a small portable generator for optimizer initialization.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Seed for stream `index` of a run seeded with `seed`. Distinct indices give
/// decorrelated seeds; the mapping is a pure function of its arguments.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    mix();
    return mix();
}

}  // namespace imdd
