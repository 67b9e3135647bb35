#include "flatmoments.hpp"

#include <cmath>
#include <stdexcept>

namespace flatmoments {

namespace {

constexpr double kPoleTol = 1e-8;

void guard(double dist, const char* what) {
    if (dist < kPoleTol) throw std::domain_error(std::string("germ: ") + what);
}

// (a; tau)_inf vanishes at a = tau^{-l}, l >= 0
void guard_poch_zeros(cplx a, double tau, const char* what) {
    double r = std::abs(a);
    if (r < 1.0 - kPoleTol) return;
    for (double p = 1.0; p <= r + 1.0; p /= tau)
        if (std::abs(a - p) < kPoleTol) throw std::domain_error(std::string("germ: ") + what);
}

}  // namespace

Germs::Germs(double tau_, double t_eff_, double x_, bool tilde_)
    : tau(tau_), t_eff(t_eff_), x(x_), tilde(tilde_), ctx(tau_, 1e-14, 1e-14, 4096) {}

cplx Germs::f1(cplx w, int n) const {
    if (n < 1) throw std::domain_error("germ: f1 needs n >= 1");
    if (tilde) w *= std::pow(tau, -0.5 * n);
    const double tn = std::pow(tau, n);
    guard(std::abs(w), "f1 pole at w = 0");
    guard(std::abs(1.0 + w), "f1 singularity at w = -1");
    guard(std::abs(1.0 + tn * w), "f1 singularity at w = -tau^-n");
    return std::pow(1.0 - tau, n) / (w * (1.0 - tn)) *
           std::exp(t_eff * (1.0 / (1.0 + w) - 1.0 / (1.0 + tn * w)));
}

cplx Germs::f2(cplx w, int n) const {
    if (tilde) w *= std::pow(tau, -0.5 * n);
    const double tn = std::pow(tau, n);
    guard(std::abs(1.0 + w), "f2 singularity at w = -1");
    return std::pow((1.0 + tn * w) / (1.0 + w) * std::pow(tau, -0.5 * n), 2.0 * x - 1.0);
}

cplx Germs::gp(cplx w, int n) const {
    if (tilde) w *= std::pow(tau, -0.5 * n);
    const double tn = std::pow(tau, n);
    const cplx w2 = w * w;
    guard_poch_zeros(-tn * w, tau, "gp pole from (-tau^n w; tau)");
    guard_poch_zeros(tn * w2, tau, "gp pole from (tau^n w^2; tau)");
    return qcalc::qpoch(-w, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(-tn * w, tau, qcalc::n_infinity, ctx) *
           qcalc::qpoch(tn * tn * w2, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(tn * w2, tau, qcalc::n_infinity, ctx);
}

cplx Germs::gu(cplx w, int n) const {
    if (tilde) w *= std::pow(tau, -0.5 * n);
    const double tn = std::pow(tau, n);
    const cplx w2 = w * w;
    guard_poch_zeros(-tn * w, tau, "gu pole from (-tau^n w; tau)");
    guard_poch_zeros(tau * tn * w2, tau, "gu pole from (tau^{1+n} w^2; tau)");
    return qcalc::qpoch(-w, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(-tn * w, tau, qcalc::n_infinity, ctx) *
           qcalc::qpoch(tn * tn * w2, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(tau * tn * w2, tau, qcalc::n_infinity, ctx);
}

cplx Germs::h1(cplx w1, cplx w2, int n1, int n2) const {
    if (tilde) {
        w1 *= std::pow(tau, -0.5 * n1);
        w2 *= std::pow(tau, -0.5 * n2);
    }
    const cplx ww = w1 * w2;
    const double t1 = std::pow(tau, n1), t2 = std::pow(tau, n2);
    guard_poch_zeros(t1 * ww, tau, "h1 pole from (tau^n1 w1 w2; tau)");
    guard_poch_zeros(t2 * ww, tau, "h1 pole from (tau^n2 w1 w2; tau)");
    return qcalc::qpoch(ww, tau, qcalc::n_infinity, ctx) *
           qcalc::qpoch(t1 * t2 * ww, tau, qcalc::n_infinity, ctx) /
           (qcalc::qpoch(t1 * ww, tau, qcalc::n_infinity, ctx) *
            qcalc::qpoch(t2 * ww, tau, qcalc::n_infinity, ctx));
}

cplx Germs::h2(cplx w1, cplx w2, int n1, int n2) const {
    if (tilde) {
        w1 *= std::pow(tau, -0.5 * n1);
        w2 *= std::pow(tau, -0.5 * n2);
    }
    const double t1 = std::pow(tau, n1), t2 = std::pow(tau, n2);
    guard(std::abs(w1 * t1 - w2), "h2 pole at w2 = tau^n1 w1");
    guard(std::abs(w2 * t2 - w1), "h2 pole at w1 = tau^n2 w2");
    return (w1 * t1 - w2 * t2) * (w2 - w1) / ((w1 * t1 - w2) * (w2 * t2 - w1));
}

cplx Germs::e(cplx w1, cplx w2, int n1, int n2) const {
    if (tilde) {
        w1 *= std::pow(tau, -0.5 * n1);
        w2 *= std::pow(tau, -0.5 * n2);
    }
    const cplx ww = w1 * w2;
    const double t1 = std::pow(tau, n1), t2 = std::pow(tau, n2);
    guard(std::abs(1.0 - ww), "e pole at w1 w2 = 1");
    guard(std::abs(1.0 - t1 * t2 * ww), "e pole at w1 w2 = tau^-(n1+n2)");
    return (1.0 - t1 * ww) * (1.0 - t2 * ww) / ((1.0 - ww) * (1.0 - t1 * t2 * ww));
}

cplx Germs::u(cplx z, int n) const {
    if (n < 1) throw std::domain_error("germ: u needs n >= 1");
    const double th = std::pow(tau, 0.5 * n);
    const cplx z2 = z * z;
    guard(std::abs(z), "u pole at z = 0");
    guard(std::abs(1.0 + z / th), "u singularity at z = -tau^{n/2}");
    guard(std::abs(1.0 + th * z), "u singularity at z = -tau^{-n/2}");
    guard_poch_zeros(-th * z, tau, "u pole from (-tau^{n/2} z; tau)");
    guard_poch_zeros(tau * z2, tau, "u pole from (tau z^2; tau)");
    return std::pow(1.0 - tau, n) * th / z *
           std::exp(t_eff * (1.0 / (1.0 + z / th) - 1.0 / (1.0 + th * z))) *
           qcalc::qpoch(-z / th, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(-th * z, tau, qcalc::n_infinity, ctx) *
           qcalc::qpoch(tau * std::pow(tau, n) * z2, tau, qcalc::n_infinity, ctx) /
           qcalc::qpoch(tau * z2, tau, qcalc::n_infinity, ctx);
}

cplx Germs::uu(cplx z, int n) const {
    if (n < 1) throw std::domain_error("germ: uu needs n >= 1");
    const double tn = std::pow(tau, n);
    return std::pow(tau, -0.5 * n) * z * (1.0 - tn * z * z) / (1.0 - tn);
}

cplx Germs::up(cplx z, int n) const {
    guard(std::abs(z * z - 1.0), "up pole at z = +-1");
    return double((n % 2 == 0) ? 1 : -1) * std::pow(tau, -0.5 * n) / (z * z - 1.0);
}

cplx Germs::uap(cplx z, int n) const {
    guard(std::abs(z * z - 1.0), "uap pole at z = +-1");
    return double((n % 2 == 0) ? 1 : -1) * std::pow(tau, -0.5 * n) * (1.0 + z * z) /
           (z * z - 1.0);
}

cplx Germs::p_weight(cplx y, int m) const {
    const double th = std::pow(tau, 0.5 * m);
    guard(std::abs(1.0 + th * y), "p pole at y = -tau^{-m/2}");
    return (1.0 - th * y) / (1.0 + th * y);
}

cplx Germs::v(double lambda, cplx y, int m) const {
    cplx p = p_weight(y, m);
    return p * std::exp(-lambda * p) * u(y, m);
}

double Germs::h_limit(int sa, int na, int sb, int nb) const {
    const double num = std::abs(sb * std::pow(tau, 0.5 * nb) - sa * std::pow(tau, 0.5 * na));
    const double den = 1.0 - sa * sb * std::pow(tau, 0.5 * (na + nb));
    guard(std::abs(den), "h limit degenerate at na = nb = 0 with equal signs");
    const int mn = std::min(na, nb);
    const double sgn = (sa * sb > 0 && mn % 2 == 1) ? -1.0 : 1.0;
    return sgn * std::pow(tau, -0.5 * na * nb) * num / den;
}

}  // namespace flatmoments
