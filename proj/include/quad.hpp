#pragma once
// Quadrature rules (unit circle with principal value, half-line, truncated
// vertical line) and the two scalar special functions (Airy, log-Gamma)
// shared by the analytic modules.

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace quad {

using cplx = std::complex<double>;

struct QuadratureRule {
    enum class Kind { circle_pv, halfline_gl, vline_gauss };
    Kind kind;
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    std::map<std::string, double> meta;  // cutoffs used to build the rule
};

// Midpoint rule on the unit circle, nodes e^{i theta_j} with
// theta_j = (j + 1/2) 2 pi / N.  No node lands on +-1 and the node set is
// closed under y -> 1/y and y -> -y, which makes sums over the rule evaluate
// Cauchy principal values of simple poles at +-1 exactly (the contributions
// of each reflection pair add up to the half residue).  Weights absorb the
// 1/(2 pi i), so integrate(rule, f) ~ (1/2 pi i) oint f(y) dy.
QuadratureRule circle_rule(int n);

// Gauss-Legendre on [0, lambda]; weights are plain (they sum to lambda).
QuadratureRule halfline_rule(int n_nodes, double lambda);

// Trapezoid on the segment [c - iS, c + iS], weights absorbing 1/(2 pi i):
// integrate(rule, f) ~ (1/2 pi i) int f(s) ds along the vertical line.
QuadratureRule vline_rule(double c, double s, int n);

// Truncation error of a vline rule for integrands bounded by e^{-b Im(s)^2}:
// sqrt(pi/b) erfc(S sqrt(b)); multiply by the integrand's constant.
double vline_truncation_bound(double s, double b);

// Half-width S needed for e^{-b S^2} < tol.
double vline_s_for(double b, double tol = 1e-14);

template <class Rule, class F>
cplx integrate(const Rule& r, F&& f) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < r.nodes.size(); ++j)
        acc += r.weights[j] * f(r.nodes[j]);
    return acc;
}

template <class F>
cplx integrate_circle(F&& f, const QuadratureRule& r) {
    return integrate(r, f);
}

struct AiryValue {
    double ai;
    double aip;
};

// Ai and Ai' for x in [-30, 30], relative accuracy ~1e-12.  Maclaurin series
// for |x| <= 5, the standard large-|x| expansions for |x| >= 12, and a
// Taylor-stepped solution of y'' = xy seeded at +-12 in between (stepping
// toward the origin, where the wanted solution does not decay, so seed
// errors are not amplified).
AiryValue airy(double x);

// Principal log-Gamma: fixed-coefficient rational approximation on
// Re z >= 1/2, reflection below.  Nonpositive integers raise
// std::domain_error.
cplx gamma_ln(cplx z);

}  // namespace quad
