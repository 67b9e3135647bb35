#ifndef QCALC_HPP
#define QCALC_HPP

/// \file qcalc.hpp
/// \brief q-deformed special functions: Pochhammer symbols, q-factorials,
///        and the generalized q-exponential with its three classical
///        specializations.
///
/// Everything here is pure and reentrant.  All series and infinite products
/// are truncated against explicit tail bounds carried in a QContext; hitting
/// the summation cap with the bound still above tolerance raises, it never
/// truncates silently.

#include <complex>
#include <stdexcept>

namespace qcalc {

using cplx = std::complex<double>;

/// Raised when a series/product cannot reach its tolerance within the
/// configured cap.  Distinct from std::domain_error so callers can map
/// "bad input" and "budget exhausted" to different exit paths.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precision and truncation budgets shared by every q-series evaluation.
///
/// tau is the deformation parameter; the open interval (0,1) is enforced at
/// construction since every infinite product used downstream converges only
/// there.
struct QContext {
    double tau;
    double poch_tol;
    double series_tol;
    int m_cap;

    explicit QContext(double tau_, double poch_tol_ = 1e-12,
                      double series_tol_ = 1e-12, int m_cap_ = 64)
        : tau(tau_), poch_tol(poch_tol_), series_tol(series_tol_), m_cap(m_cap_) {
        if (!(tau > 0.0 && tau < 1.0))
            throw std::domain_error("QContext: tau must lie strictly in (0,1)");
        if (!(poch_tol > 0.0 && poch_tol <= 1e-3))
            throw std::domain_error("QContext: poch_tol must lie in (0, 1e-3]");
        if (!(series_tol > 0.0 && series_tol <= 1e-3))
            throw std::domain_error("QContext: series_tol must lie in (0, 1e-3]");
        if (m_cap < 1) throw std::domain_error("QContext: m_cap must be positive");
    }
};

/// Marker for the n = infinity case of qpoch.
inline constexpr int n_infinity = -1;

/// Value of a truncated series/product together with the tail bound that
/// justified stopping.
struct SeriesValue {
    cplx value;
    double tail_bound;
};

/// (a; q)_n, the q-Pochhammer symbol: prod_{k=0}^{n-1} (1 - a q^k).
///
/// Pass n_infinity for the infinite product (requires |q| < 1; otherwise a
/// domain error).  The infinite case stops at the first K with
/// |a| |q|^K / (1 - |q|) below ctx.poch_tol and reports that bound.
/// A factor that is exactly zero is legal; the result is then 0.
SeriesValue qpoch_full(cplx a, cplx q, int n, const QContext& ctx);

/// Convenience wrapper returning just the value.
inline cplx qpoch(cplx a, cplx q, int n, const QContext& ctx) {
    return qpoch_full(a, q, n, ctx).value;
}

/// n_q! = [1]_q [2]_q ... [n]_q with [k]_q = (1 - q^k)/(1 - q).
/// Equals (q; q)_n / (1-q)^n; both forms agree to roundoff.
double qfactorial(int n, double q);

/// Generalized q-exponential  exp_q(x; xi) = sum_k xi^{k(k-1)} x^k / k_q!.
///
/// Specializations: xi = 1 gives e_q, xi = q^{1/2} gives E_q, and
/// xi = q^{1/4} gives the symmetric exp_q.  For |xi| strictly below 1 the
/// series is entire in x.  On the unit circle |xi| = 1 convergence needs
/// |x| < 1, enforced as a domain error.
SeriesValue qexp_full(cplx x, double q, cplx xi, const QContext& ctx);

inline cplx qexp(cplx x, double q, cplx xi, const QContext& ctx) {
    return qexp_full(x, q, xi, ctx).value;
}

}  // namespace qcalc

#endif
