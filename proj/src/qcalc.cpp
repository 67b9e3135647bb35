#include "qcalc.hpp"

#include <cmath>

namespace qcalc {

SeriesValue qpoch_full(cplx a, cplx q, int n, const QContext& ctx) {
    if (n == 0) return {cplx(1.0, 0.0), 0.0};
    if (n != n_infinity && n < 0)
        throw std::domain_error("qpoch: n must be nonnegative or n_infinity");

    const double qa = std::abs(q);
    if (n == n_infinity && qa >= 1.0)
        throw std::domain_error("qpoch: infinite product requires |q| < 1");

    cplx prod(1.0, 0.0);
    cplx qk(1.0, 0.0);  // q^k
    if (n != n_infinity) {
        for (int k = 0; k < n; ++k) {
            prod *= (1.0 - a * qk);
            qk *= q;
        }
        return {prod, 0.0};
    }

    // Infinite case: |log of remaining tail| <= |a| |q|^K / (1 - |q|).
    const double aa = std::abs(a);
    double bound = aa / (1.0 - qa);
    int k = 0;
    while (bound >= ctx.poch_tol) {
        prod *= (1.0 - a * qk);
        qk *= q;
        bound *= qa;
        ++k;
        if (k > 100000)
            throw truncation_error("qpoch: infinite product failed to converge");
    }
    return {prod, bound};
}

double qfactorial(int n, double q) {
    if (n < 0) throw std::domain_error("qfactorial: n must be nonnegative");
    double f = 1.0;
    double qk = q;
    for (int k = 1; k <= n; ++k) {
        f *= (1.0 - qk) / (1.0 - q);
        qk *= q;
    }
    return f;
}

SeriesValue qexp_full(cplx x, double q, cplx xi, const QContext& ctx) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("qexp: q must lie strictly in (0,1)");
    const double xia = std::abs(xi);
    if (xia > 1.0 + 1e-15)
        throw std::domain_error("qexp: |xi| must be <= 1");
    const bool unimodular = std::abs(xia - 1.0) <= 1e-15;
    if (unimodular && std::abs(x) >= 1.0)
        throw std::domain_error("qexp: |xi| = 1 requires |x| < 1");

    // term_k = xi^{k(k-1)} x^k / k_q!; update multiplicatively:
    // term_{k+1} = term_k * xi^{2k} * x / [k+1]_q.
    cplx sum(1.0, 0.0);
    cplx term(1.0, 0.0);
    cplx xi2k(1.0, 0.0);   // xi^{2k}
    double xia2k = 1.0;    // |xi|^{2k}
    const cplx xi2 = xi * xi;
    const double xia2 = xia * xia;
    const double xa = std::abs(x);
    double qk1 = q;  // q^{k+1}
    for (int k = 0; k < ctx.m_cap; ++k) {
        const double bracket = (1.0 - qk1) / (1.0 - q);  // [k+1]_q
        term *= xi2k * x / bracket;
        sum += term;
        xi2k *= xi2;
        xia2k *= xia2;
        qk1 *= q;

        // Tail control: the next-term ratio |xi|^{2(k+1)} |x| / [k+2]_q is
        // nonincreasing in k for |xi| <= 1 ([j]_q increases to 1/(1-q));
        // once it is below 1/2 the tail is bounded by twice the next term.
        const double next_bracket = (1.0 - qk1) / (1.0 - q);
        const double ratio = xia2k * xa / next_bracket;
        if (ratio < 0.5) {
            const double tail = 2.0 * std::abs(term) * ratio;
            if (tail < ctx.series_tol) return {sum, tail};
        }
    }
    throw truncation_error("qexp: series did not meet tolerance within m_cap terms");
}

}  // namespace qcalc
