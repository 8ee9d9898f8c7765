// AVX2+FMA variants. Compiled with -mavx2 -mfma; only reachable after the
// dispatcher has confirmed CPU support.
#include "kernels_internal.hpp"

#if CAROUSIM_HAVE_AVX2_BACKEND

#include <immintrin.h>

namespace carousim::kernels::detail {
namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_avx2(std::span<const double> a) {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(&a[i]));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sum_squares_avx2(std::span<const double> a) {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(&a[i]);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void add_avx2(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(&out[i],
                         _mm256_add_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void axpy_avx2(double alpha, std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(&out[i],
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(&x[i]),
                                         _mm256_loadu_pd(&out[i])));
    for (; i < n; ++i) out[i] += alpha * x[i];
}

void scale_avx2(std::span<const double> a, double alpha, std::span<double> out) {
    const std::size_t n = a.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(va, _mm256_loadu_pd(&a[i])));
    for (; i < n; ++i) out[i] = alpha * a[i];
}

void convolve_prefix_avx2(std::span<const double> coeff,
                          std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    for (std::size_t t = 0; t < n; ++t) out[t] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        axpy_avx2(x[i], coeff.first(n - i), out.subspan(i));
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{dot_avx2,  sum_avx2,   sum_squares_avx2,
                                   add_avx2,  axpy_avx2,  scale_avx2,
                                   convolve_prefix_avx2};
    return table;
}

}  // namespace carousim::kernels::detail

#endif  // CAROUSIM_HAVE_AVX2_BACKEND
