#pragma once

// Data-parallel inner loops of the simulator. Every kernel has a scalar
// reference implementation; vector variants are chosen at runtime from what
// the CPU supports and must reproduce the reference (bit-exact for
// detection, to rounding for the correlator sums).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace imdd::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa) noexcept;

/// Structure-of-arrays view of up to three coordinate columns.
struct Columns {
    const double* coord[3] = {nullptr, nullptr, nullptr};
    std::size_t dims = 0;
    std::size_t count = 0;
};

/// Index of the closest point for every sample; ties go to the lowest index.
using NearestFn = void (*)(Columns points, Columns samples, std::uint32_t* out);

/// out[k] = scale * sum_j samples[k * span_len + j] * row[j] for k < blocks.
using CorrelateFn = void (*)(const double* samples, std::size_t blocks, std::size_t span_len,
                             const double* row, double scale, double* out);

struct KernelTable {
    Isa isa;
    NearestFn nearest;
    CorrelateFn correlate;
};

bool isa_supported(Isa isa) noexcept;
std::vector<Isa> supported_isas();

/// Kernel table for a specific ISA; throws if the CPU lacks it.
const KernelTable& table(Isa isa);

/// Best supported table. Setting IMDD_ISA=scalar in the environment forces
/// the reference kernels.
const KernelTable& active();

namespace scalar {
void nearest(Columns points, Columns samples, std::uint32_t* out);
void correlate(const double* samples, std::size_t blocks, std::size_t span_len, const double* row, double scale,
               double* out);
}  // namespace scalar

#if defined(IMDD_HAVE_AVX2)
namespace avx2 {
void nearest(Columns points, Columns samples, std::uint32_t* out);
void correlate(const double* samples, std::size_t blocks, std::size_t span_len, const double* row, double scale,
               double* out);
}  // namespace avx2
#endif

}  // namespace imdd::kernels
