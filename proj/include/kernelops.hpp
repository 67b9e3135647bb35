#pragma once
// Dense inner-loop kernels shared by the quadrature and Pfaffian code paths.
// A scalar reference implementation always exists.  On x86-64 an AVX2+FMA
// variant lives in its own translation unit (the only one compiled with
// vector flags) and is picked at runtime when the CPU supports it; on
// AArch64 a NEON variant is picked instead.  All variants must agree with
// the scalar path to rounding noise, and the unit tests enforce that.

#include <complex>
#include <cstddef>

namespace kernelops {

using cplx = std::complex<double>;

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Unconjugated complex dot product, sum_i a[i]*b[i].
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

// Name of the path the dispatcher selected: "avx2", "neon" or "scalar".
const char* active_isa();

namespace detail {
double dot_scalar(const double*, const double*, std::size_t);
void axpy_scalar(double, const double*, double*, std::size_t);
cplx cdot_scalar(const cplx*, const cplx*, std::size_t);
void caxpy_scalar(cplx, const cplx*, cplx*, std::size_t);
#if defined(KERNELOPS_HAVE_AVX2_TU)
double dot_avx2(const double*, const double*, std::size_t);
void axpy_avx2(double, const double*, double*, std::size_t);
cplx cdot_avx2(const cplx*, const cplx*, std::size_t);
void caxpy_avx2(cplx, const cplx*, cplx*, std::size_t);
#endif
}  // namespace detail

}  // namespace kernelops
