// AVX2/FMA variants of the vector kernels. This translation unit is compiled
// with -mavx2 -mfma; it must only be entered after the runtime cpuid check.

#include "insulab/kernels.hpp"

#if defined(INSULAB_HAVE_AVX2)

#include <immintrin.h>

namespace insulab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(&y[i]);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(&x[i]), vy);
        _mm256_storeu_pd(&y[i], vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(&y[i]);
        vy = _mm256_fmadd_pd(vb, vy, _mm256_loadu_pd(&x[i]));
        _mm256_storeu_pd(&y[i], vy);
    }
    for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y) {
    for (std::size_t r = 0; r < A.rows; ++r) {
        const std::int64_t k0 = A.row_ptr[r];
        const std::int64_t k1 = A.row_ptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        std::int64_t k = k0;
        for (; k + 4 <= k1; k += 4) {
            const __m256i idx = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(&A.col_idx[k]));
            const __m256d xv = _mm256_i64gather_pd(x.data(), idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(&A.values[k]), xv, acc);
        }
        double s = hsum(acc);
        for (; k < k1; ++k) s += A.values[k] * x[A.col_idx[k]];
        y[r] = s;
    }
}

}  // namespace insulab::kernels::avx2

#endif  // INSULAB_HAVE_AVX2
