#include <immintrin.h>

#include "avtest/kernels/kernels.hpp"

namespace avtest::kernels {

namespace {

void affine_margin(const double* states, std::size_t rows, std::size_t stride, const std::size_t* cols,
                   const double* coefs, std::size_t nterms, double b, double* out) {
    const __m256d vb = _mm256_set1_pd(b);
    const auto s = static_cast<long long>(stride);
    const __m256i row_offsets = _mm256_set_epi64x(3 * s, 2 * s, s, 0);
    std::size_t i = 0;
    for (; i + 4 <= rows; i += 4) {
        const double* base = states + i * stride;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < nterms; ++k) {
            const __m256i idx = _mm256_add_epi64(row_offsets, _mm256_set1_epi64x(static_cast<long long>(cols[k])));
            const __m256d x = _mm256_i64gather_pd(base, idx, 8);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coefs[k]), x));
        }
        _mm256_storeu_pd(out + i, _mm256_sub_pd(vb, acc));
    }
    for (; i < rows; ++i) {
        const double* x = states + i * stride;
        double acc = 0.0;
        for (std::size_t k = 0; k < nterms; ++k) acc = acc + coefs[k] * x[cols[k]];
        out[i] = b - acc;
    }
}

void negate(double* v, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(v + i, _mm256_xor_pd(_mm256_loadu_pd(v + i), sign));
    for (; i < n; ++i) v[i] = -v[i];
}

void elementwise_min(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void elementwise_max(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{affine_margin, negate, elementwise_min, elementwise_max};
    return __builtin_cpu_supports("avx2") ? &table : nullptr;
}

}  // namespace avtest::kernels
