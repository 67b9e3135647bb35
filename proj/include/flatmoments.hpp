#pragma once
// Moment formulas for the flat and half-flat initial conditions: the scalar
// factors entering the contour integrands ("germs"), the half-flat and flat
// moment sums, and the Pfaffian kernel for the flat moments.

#include <complex>

#include "qcalc.hpp"

namespace flatmoments {

using cplx = std::complex<double>;

// Scalar factors shared by the half-flat and flat formulas.  With
// tilde = true every half-flat-coordinate factor is evaluated at
// w = tau^{-n/2} z (two-point factors scale each argument separately);
// the u-family and v are already defined in the scaled coordinates and
// ignore the flag.  Arguments closer than 1e-8 to a pole of the factor
// raise std::domain_error instead of returning garbage.
struct Germs {
    double tau;
    double t_eff;      // time multiplied by the rate asymmetry
    double x = 1.0;    // lattice position parameter entering f2
    bool tilde = false;
    qcalc::QContext ctx{0.5, 1e-14, 1e-14, 4096};

    Germs(double tau_, double t_eff_, double x_ = 1.0, bool tilde_ = false);

    cplx f1(cplx w, int n) const;
    cplx f2(cplx w, int n) const;
    cplx gp(cplx w, int n) const;
    cplx gu(cplx w, int n) const;
    cplx h1(cplx w1, cplx w2, int n1, int n2) const;
    cplx h2(cplx w1, cplx w2, int n1, int n2) const;
    cplx e(cplx w1, cplx w2, int n1, int n2) const;

    cplx u(cplx z, int n) const;
    cplx uu(cplx z, int n) const;
    cplx up(cplx z, int n) const;
    cplx uap(cplx z, int n) const;
    cplx v(double lambda, cplx y, int m) const;
    cplx p_weight(cplx y, int m) const;  // the decay rate in v; Re > 0 on |y| = 1

    // closed form of lim_{w -> sa tau^{-na/2}} h1*h2(w, sb tau^{-nb/2}; na, nb)
    double h_limit(int sa, int na, int sb, int nb) const;
};

enum class GermName { f1, f2, gp, gu, h1, h2, e, v, u, uu, up, uap };

struct GermArgs {
    cplx w{};           // contour variable (w, z or y depending on the factor)
    int n = 1;          // index carried by the factor
    double lambda = 0;  // only read by v
};

// Name-indexed access to the factors above.  Two-point factors (h1, h2, e)
// read both slots, everything else only `a`; tilde overrides the struct
// flag for this one evaluation.
cplx germ(const Germs& g, GermName name, const GermArgs& a,
          const GermArgs& b = {}, bool tilde = false);

// Term k of the half-flat moment sum,
//   E[tau^{m N_x(t)}] = m_tau! sum_{k=0}^m nu_halfflat(k, m, t, x, tau, ...),
// by tensor quadrature over k copies of the circle of radius tau^{-eta}
// (rule supplies the unit-circle nodes, scaled internally).  The position
// factor ((1 + tau^n w)/(1 + w))^x carries exponent x; using x-1 instead
// evaluates the observable one site to the left, so that variant is just
// nu_halfflat(..., x-1, ...).
cplx nu_halfflat(int k, int m, double t, int x, double tau, double eta,
                 const quad::QuadratureRule& rule);

// Term k of the flat moment sum,
//   E[tau^{m h(t,0)/2}] = m_tau! sum_{k=0}^m nu_flat(k, m, t, tau, rule).
// k splits as k_u + 2 k_p: a finite sum over k_u signed indices (sigma, nu)
// with the sigma_a nu_a pairwise distinct, and a k_p-fold unit-circle
// integral over paired variables (z, 1/z).  Each signed index carries the
// weight sigma/2 * tau^{-nu/2}; each pair carries
// (-1)^n/z * tau^{-n(n+1)/2} (tau^{-n} - 1) times the two-sided rational
// factor (1-z^2)^2 / ((tau^n - z^2)(tau^{-n} - z^2)).  Dropping the sigma
// or padding the weights with extra powers of tau breaks the t = 0
// normalization E[tau^{m h/2}] = 1, so these weights are pinned by tests
// against the half-flat limit and the simulator.
cplx nu_flat(int k, int m, double t, double tau, const quad::QuadratureRule& rule);

// Quadrature data for the flat-moment Pfaffian kernel.  lambda_rule lives
// on [0, Lambda] with Lambda = 40/c_min, c_min = (1 - tau)/4 <= Re p on the
// unit circle, so the discarded e^{-lambda Re p} tail is below e^{-40}.
struct KflatParams {
    double tau;
    double t_eff;
    quad::QuadratureRule lambda_rule;
    quad::QuadratureRule circle_rule;
    int m_cap = 4;
};

KflatParams kflat_params(double tau, double t, int n_lambda = 48, int n_circle = 128);

struct KflatBlock {
    cplx k11, k12, k21, k22;
};

// One 2x2 block of the flat-moment kernel at ((lambda_a, m_a), (lambda_b, m_b)):
//   [ K11(la, lb)   K12(la) ]
//   [ -K12(lb)      K22     ]      K22 = sgn(lb - la)/2.
// K11 = (principal-value circle integral, present only when m_a = m_b)
//       - 1/2 sum_{s,s'} (-ss')^{min(m_a,m_b)} sgn(s' m_b - s m_a)
//         tau^{(m_a^2+m_b^2)/4 - (m_a+m_b)/2} v(la, s, m_a) v(lb, s', m_b),
// K12 = -1/2 sum_s s tau^{m_a^2/4 - m_a/2} v(la, s, m_a).
// Each evaluation point s = +-1 keeps its sign weight (s in K12, ss'
// absorbed into the K11 sum); symmetrizing them away breaks the m = 1
// normalization at t = 0.
KflatBlock kflat_block(double la, double lb, int ma, int mb, const KflatParams& par);

// E[tau^{m h(t,0)/2}] through the Pfaffian kernel:
//   m_tau! tau^{-m^2/4} sum_{k=0}^m (-1)^k sum_{m_1+...+m_k=m}
//     int_{0<l_1<...<l_k} pf[K]  (2k x 2k, blocks as in kflat_block).
// The lambda integral runs over the ordered sector in gap coordinates
// (plain tensor quadrature would stall on the kink of sgn(lb - la)); the
// composition sum supplies the k! relating the sector to the full orthant.
// workers > 1 splits the outermost gap index across threads; partial sums
// are reduced in index order, so results are identical for any worker count.
double moment_flat(int m, double t, double tau, const KflatParams& par, int workers = 1);

}  // namespace flatmoments
