// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <limits>

#include "imdd/kernels.hpp"

namespace imdd::kernels::avx2 {

void nearest(Columns points, Columns samples, std::uint32_t* out) {
    const std::size_t dims = points.dims;
    const std::size_t vec_end = samples.count & ~std::size_t{3};
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());

    for (std::size_t n = 0; n < vec_end; n += 4) {
        __m256d y[3];
        for (std::size_t k = 0; k < dims; ++k) y[k] = _mm256_loadu_pd(samples.coord[k] + n);

        __m256d best = inf;
        __m256d best_index = _mm256_setzero_pd();
        for (std::size_t i = 0; i < points.count; ++i) {
            __m256d d = _mm256_sub_pd(y[0], _mm256_set1_pd(points.coord[0][i]));
            __m256d acc = _mm256_mul_pd(d, d);
            for (std::size_t k = 1; k < dims; ++k) {
                d = _mm256_sub_pd(y[k], _mm256_set1_pd(points.coord[k][i]));
                acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
            }
            const __m256d closer = _mm256_cmp_pd(acc, best, _CMP_LT_OQ);
            best = _mm256_blendv_pd(best, acc, closer);
            best_index = _mm256_blendv_pd(best_index, _mm256_set1_pd(static_cast<double>(i)), closer);
        }
        const __m128i idx = _mm256_cvttpd_epi32(best_index);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + n), idx);
    }

    if (vec_end < samples.count) {
        Columns tail = samples;
        for (std::size_t k = 0; k < dims; ++k) tail.coord[k] = samples.coord[k] + vec_end;
        tail.count = samples.count - vec_end;
        scalar::nearest(points, tail, out + vec_end);
    }
}

void correlate(const double* samples, std::size_t blocks, std::size_t span_len, const double* row, double scale,
               double* out) {
    const std::size_t vec_end = span_len & ~std::size_t{3};
    for (std::size_t k = 0; k < blocks; ++k) {
        const double* s = samples + k * span_len;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < vec_end; j += 4)
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(s + j), _mm256_loadu_pd(row + j)));
        const __m128d lo = _mm256_castpd256_pd128(acc);
        const __m128d hi = _mm256_extractf128_pd(acc, 1);
        const __m128d pair = _mm_add_pd(lo, hi);
        double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
        for (std::size_t j = vec_end; j < span_len; ++j) sum += s[j] * row[j];
        out[k] = scale * sum;
    }
}

}  // namespace imdd::kernels::avx2
