#include "imdd/kernels.hpp"

#include <limits>

namespace imdd::kernels::scalar {

void nearest(Columns points, Columns samples, std::uint32_t* out) {
    for (std::size_t n = 0; n < samples.count; ++n) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_index = 0;
        for (std::size_t i = 0; i < points.count; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < points.dims; ++k) {
                const double d = samples.coord[k][n] - points.coord[k][i];
                acc += d * d;
            }
            if (acc < best) {
                best = acc;
                best_index = static_cast<std::uint32_t>(i);
            }
        }
        out[n] = best_index;
    }
}

void correlate(const double* samples, std::size_t blocks, std::size_t span_len, const double* row, double scale,
               double* out) {
    for (std::size_t k = 0; k < blocks; ++k) {
        const double* s = samples + k * span_len;
        double acc = 0.0;
        for (std::size_t j = 0; j < span_len; ++j) acc += s[j] * row[j];
        out[k] = scale * acc;
    }
}

}  // namespace imdd::kernels::scalar
