#pragma once
// Nystrom discretization of Fredholm determinants det(I - K) and Fredholm
// Pfaffians pf(J - K) for 2x2 matrix kernels on [0, Lambda].

#include <array>
#include <complex>
#include <functional>

#include "quad.hpp"

namespace fredholm {

using cplx = std::complex<double>;

// Skew 2x2-block kernel.  eval(l1, l2) returns {K11, K12, K21, K22}; the
// diagonal blocks must be skew under argument swap and K21(l1,l2) must equal
// -K12(l2,l1).  The smoothness tag records whether a block carries a
// (1/2) sgn(l2 - l1) discontinuity, which slows Nystrom convergence and is
// worth knowing when picking node counts.
struct Kernel2x2 {
    enum class Smoothness { analytic, sgn_block };
    using Blocks = std::array<cplx, 4>;

    std::function<Blocks(double, double)> eval;
    Smoothness smoothness = Smoothness::analytic;

    // Assembles the standard arrangement [[K11(a,b), K12(a,b)],
    // [-K12(b,a), K22(a,b)]] from the three independent blocks.
    template <class F11, class F12, class F22>
    static Kernel2x2 from_blocks(F11 f11, F12 f12, F22 f22,
                                 Smoothness s = Smoothness::analytic) {
        Kernel2x2 k;
        k.smoothness = s;
        k.eval = [f11, f12, f22](double a, double b) -> Blocks {
            return {f11(a, b), f12(a, b), -f12(b, a), f22(a, b)};
        };
        return k;
    }
};

// det(I - W^{1/2} K W^{1/2}) over the rule's nodes; the continuum limit is
// det(I - K)_{L^2(0, Lambda)}.
double nystrom_det(const std::function<cplx(double, double)>& kernel,
                   const quad::QuadratureRule& rule);

// pf(J_d - M) with M_{(i,a),(j,b)} = sqrt(w_i w_j) K_{a,b}(x_i, x_j), rows
// interleaved per node so J_d is the standard J.  The continuum limit is
// pf(J - K)_{L^2(0, Lambda)}.  Any other row ordering changes the Pfaffian
// by the permutation sign; this ordering is frozen.
double nystrom_pf(const Kernel2x2& kernel, const quad::QuadratureRule& rule);

// |pf(J_d - M)^2 - det(I + J_d M)| / (1 + |det|) on the discretized system;
// a pure linear-algebra identity, so anything above ~1e-9 means the
// assembly or the Pfaffian is broken.  nystrom_pf asserts this in debug
// builds; tests use it directly.
double pf_det_residual(const Kernel2x2& kernel, const quad::QuadratureRule& rule);

}  // namespace fredholm
