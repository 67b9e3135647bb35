#include "kernelops.hpp"

#if defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace kernelops {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx cdot_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

#if defined(__ARM_NEON)

static double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

static void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

// One float64x2 register holds one complex value as [re, im].
static cplx cdot_neon(const cplx* a, const cplx* b, std::size_t n) {
    float64x2_t acc1 = vdupq_n_f64(0.0);  // [sum ar*br, sum ai*bi]
    float64x2_t acc2 = vdupq_n_f64(0.0);  // [sum ar*bi, sum ai*br]
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(pa + 2 * i);
        float64x2_t vb = vld1q_f64(pb + 2 * i);
        acc1 = vfmaq_f64(acc1, va, vb);
        acc2 = vfmaq_f64(acc2, va, vextq_f64(vb, vb, 1));
    }
    return {vgetq_lane_f64(acc1, 0) - vgetq_lane_f64(acc1, 1),
            vgetq_lane_f64(acc2, 0) + vgetq_lane_f64(acc2, 1)};
}

static void caxpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const float64x2_t vre = vdupq_n_f64(alpha.real());
    const float64x2_t vim = vdupq_n_f64(alpha.imag());
    const float64x2_t sign = {-1.0, 1.0};
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(px + 2 * i);
        float64x2_t vy = vld1q_f64(py + 2 * i);
        float64x2_t t = vfmaq_f64(vy, vre, vx);            // y + ar*x
        float64x2_t u = vmulq_f64(vim, vextq_f64(vx, vx, 1));  // [ai*xi, ai*xr]
        vst1q_f64(py + 2 * i, vfmaq_f64(t, sign, u));
    }
}

#endif  // __ARM_NEON

}  // namespace detail

namespace {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    cplx (*cdot)(const cplx*, const cplx*, std::size_t);
    void (*caxpy)(cplx, const cplx*, cplx*, std::size_t);
    const char* isa;
};

Ops select_ops() {
#if defined(KERNELOPS_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return {detail::dot_avx2, detail::axpy_avx2, detail::cdot_avx2,
                detail::caxpy_avx2, "avx2"};
#endif
#if defined(__ARM_NEON)
    return {detail::dot_neon, detail::axpy_neon, detail::cdot_neon,
            detail::caxpy_neon, "neon"};
#else
    return {detail::dot_scalar, detail::axpy_scalar, detail::cdot_scalar,
            detail::caxpy_scalar, "scalar"};
#endif
}

const Ops& ops() {
    static const Ops o = select_ops();
    return o;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) { return ops().dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { ops().axpy(alpha, x, y, n); }
cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return ops().cdot(a, b, n); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { ops().caxpy(alpha, x, y, n); }
const char* active_isa() { return ops().isa; }

}  // namespace kernelops
