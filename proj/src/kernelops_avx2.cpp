// AVX2+FMA variants.  This is the only translation unit compiled with
// -mavx2 -mfma, so nothing outside kernelops::detail may be defined here.

#include "kernelops.hpp"

#if defined(KERNELOPS_HAVE_AVX2_TU)

#include <immintrin.h>

namespace kernelops::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

// Complex values are interleaved [re, im]; one __m256d holds two of them.
cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();  // lanes [ar*br, ai*bi, ...]
    __m256d acc2 = _mm256_setzero_pd();  // lanes [ar*bi, ai*br, ...]
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc1 = _mm256_fmadd_pd(va, vb, acc1);
        acc2 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc2);
    }
    alignas(32) double l1[4], l2[4];
    _mm256_store_pd(l1, acc1);
    _mm256_store_pd(l2, acc2);
    double re = (l1[0] - l1[1]) + (l1[2] - l1[3]);
    double im = (l2[0] + l2[1]) + (l2[2] + l2[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d vre = _mm256_set1_pd(alpha.real());
    const __m256d vim = _mm256_set1_pd(alpha.imag());
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        __m256d t = _mm256_fmadd_pd(vre, vx, vy);              // y + ar*x
        __m256d u = _mm256_mul_pd(vim, _mm256_permute_pd(vx, 0b0101));
        _mm256_storeu_pd(py + 2 * i, _mm256_addsub_pd(t, u));  // -/+ ai*swap(x)
    }
    const double ar = alpha.real(), ai = alpha.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

}  // namespace kernelops::detail

#endif  // KERNELOPS_HAVE_AVX2_TU
