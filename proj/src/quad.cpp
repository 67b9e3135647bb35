#include "quad.hpp"

#include <cmath>
#include <stdexcept>

namespace quad {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

QuadratureRule circle_rule(int n) {
    if (n < 8 || n % 2 != 0)
        throw std::domain_error("circle_rule: N must be even and >= 8");
    QuadratureRule r;
    r.kind = QuadratureRule::Kind::circle_pv;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        double theta = (j + 0.5) * 2.0 * kPi / n;
        cplx y{std::cos(theta), std::sin(theta)};
        r.nodes[j] = y;
        // (1/2 pi i) dy = (1/2 pi i) i y dtheta = y dtheta / (2 pi)
        r.weights[j] = y / static_cast<double>(n);
    }
    r.meta["N"] = static_cast<double>(n);
    return r;
}

QuadratureRule halfline_rule(int n_nodes, double lambda) {
    if (n_nodes < 4)
        throw std::domain_error("halfline_rule: need at least 4 nodes");
    if (!(lambda > 0.0))
        throw std::domain_error("halfline_rule: cutoff must be positive");
    QuadratureRule r;
    r.kind = QuadratureRule::Kind::halfline_gl;
    r.nodes.resize(n_nodes);
    r.weights.resize(n_nodes);
    // Gauss-Legendre on [-1, 1] by Newton iteration on P_n, then the affine
    // map onto [0, lambda].
    int m = (n_nodes + 1) / 2;
    double xm = 0.5 * lambda;
    double xl = 0.5 * lambda;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n_nodes + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n_nodes; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n_nodes * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.nodes[i] = xm - xl * z;
        r.nodes[n_nodes - 1 - i] = xm + xl * z;
        r.weights[i] = xl * w;
        r.weights[n_nodes - 1 - i] = xl * w;
    }
    r.meta["Lambda"] = lambda;
    return r;
}

QuadratureRule vline_rule(double c, double s, int n) {
    if (n < 8)
        throw std::domain_error("vline_rule: need at least 8 nodes");
    if (!(s > 0.0))
        throw std::domain_error("vline_rule: half-width must be positive");
    QuadratureRule r;
    r.kind = QuadratureRule::Kind::vline_gauss;
    r.nodes.resize(n);
    r.weights.resize(n);
    double h = 2.0 * s / (n - 1);
    for (int j = 0; j < n; ++j) {
        double u = -s + j * h;
        r.nodes[j] = cplx{c, u};
        double trap = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        // ds = i du, so (1/2 pi i) f ds = f du / (2 pi)
        r.weights[j] = cplx{trap * h / (2.0 * kPi), 0.0};
    }
    r.meta["c"] = c;
    r.meta["S"] = s;
    r.meta["h"] = h;
    return r;
}

double vline_truncation_bound(double s, double b) {
    if (!(b > 0.0))
        throw std::domain_error("vline_truncation_bound: decay rate must be positive");
    return std::sqrt(kPi / b) * std::erfc(s * std::sqrt(b));
}

double vline_s_for(double b, double tol) {
    if (!(b > 0.0) || !(tol > 0.0) || tol >= 1.0)
        throw std::domain_error("vline_s_for: need b > 0 and tol in (0,1)");
    return std::sqrt(-std::log(tol) / b);
}

// ---------------------------------------------------------------------------
// Airy
// ---------------------------------------------------------------------------

namespace {

// Maclaurin series about 0, in extended precision: near the switchover the
// positive-x value is ~1e-4 while the largest term is ~2e3, so double
// arithmetic alone would lose the last three digits to cancellation.
void airy_maclaurin(long double x, long double& ai, long double& aip) {
    static const long double kC1 =
        std::pow(3.0L, -2.0L / 3.0L) / std::tgamma(2.0L / 3.0L);  // Ai(0)
    static const long double kC2 =
        std::pow(3.0L, -1.0L / 3.0L) / std::tgamma(1.0L / 3.0L);  // -Ai'(0)
    long double x3 = x * x * x;
    long double f = 1.0L, fp = 0.0L, g = x, gp = 1.0L;
    long double a = 1.0L;            // term of f
    long double b = 0.5L * x * x;    // term of f', starts at k = 1
    long double c = x;               // term of g
    long double e = 1.0L;            // term of g'
    for (int k = 0; k < 200; ++k) {
        long double a1 = a * x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        long double c1 = c * x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        long double e1 = e * x3 / ((3.0L * k + 1.0L) * (3.0L * k + 3.0L));
        f += a1;
        fp += b;
        g += c1;
        gp += e1;
        if (std::abs(a1) + std::abs(c1) < 1e-24L * (std::abs(f) + std::abs(g)) && k > 3)
            break;
        b *= (x3 / ((3.0L * k + 5.0L) * (3.0L * k + 6.0L))) * (k + 2.0L) / (k + 1.0L);
        a = a1;
        c = c1;
        e = e1;
    }
    ai = kC1 * f - kC2 * g;
    aip = kC1 * fp - kC2 * gp;
}

// Large-|x| expansions, coefficients u_k, v_k of the standard series in
// zeta = (2/3)|x|^{3/2}.  Terms are added until they stop shrinking; at
// |x| >= 12 the smallest term is below 1e-20.
void airy_asymptotic(long double x, long double& ai, long double& aip) {
    long double ax = std::abs(x);
    long double zeta = (2.0L / 3.0L) * std::pow(ax, 1.5L);
    long double root4 = std::pow(ax, 0.25L);
    constexpr int kMax = 48;
    long double u[kMax], v[kMax];
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (int k = 1; k < kMax; ++k) {
        u[k] = u[k - 1] * (6.0L * k - 1.0L) * (6.0L * k - 5.0L) / (72.0L * k);
        v[k] = u[k] * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    }
    const long double sqrtpi = std::sqrt(3.14159265358979323846264338328L);
    if (x > 0.0L) {
        long double su = 0.0L, sv = 0.0L, zk = 1.0L;
        long double prev = 1e30L;
        for (int k = 0; k < kMax; ++k) {
            long double t = u[k] * zk;
            if (std::abs(t) > prev) break;
            su += (k % 2 ? -t : t);
            sv += (k % 2 ? -v[k] * zk : v[k] * zk);
            prev = std::abs(t);
            zk /= zeta;
        }
        long double damp = std::exp(-zeta);
        ai = damp / (2.0L * sqrtpi * root4) * su;
        aip = -root4 * damp / (2.0L * sqrtpi) * sv;
    } else {
        long double c = std::cos(zeta - 0.25L * kPi);
        long double s = std::sin(zeta - 0.25L * kPi);
        long double se = 0.0L, so = 0.0L, sep = 0.0L, sop = 0.0L;
        long double z2 = zeta * zeta, zk = 1.0L;
        for (int k = 0; 2 * k + 1 < kMax; ++k) {
            long double sgn = (k % 2 ? -1.0L : 1.0L);
            se += sgn * u[2 * k] * zk;
            sep += sgn * v[2 * k] * zk;
            so += sgn * u[2 * k + 1] * zk / zeta;
            sop += sgn * v[2 * k + 1] * zk / zeta;
            zk /= z2;
            if (u[2 * k] * zk < 1e-22L) break;
        }
        ai = (c * se + s * so) / (sqrtpi * root4);
        aip = root4 / sqrtpi * (s * sep - c * sop);
    }
}

// One Taylor step of y'' = x y from a to a + h: derivatives at a follow the
// recurrence y^{(n+2)}(a) = a y^{(n)}(a) + n y^{(n-1)}(a).
void airy_ode_step(long double a, long double h, long double& y, long double& yp) {
    constexpr int kOrd = 30;
    long double d[kOrd + 2];
    d[0] = y;
    d[1] = yp;
    d[2] = a * y;
    for (int n = 1; n + 2 <= kOrd + 1; ++n)
        d[n + 2] = a * d[n] + static_cast<long double>(n) * d[n - 1];
    long double acc = 0.0L, accp = 0.0L, hn = 1.0L, fact = 1.0L;
    for (int n = 0; n <= kOrd; ++n) {
        acc += d[n] * hn / fact;
        if (n + 1 <= kOrd + 1) accp += d[n + 1] * hn / fact;
        hn *= h;
        fact *= (n + 1.0L);
    }
    y = acc;
    yp = accp;
}

}  // namespace

AiryValue airy(double x) {
    if (!(x >= -30.0 && x <= 30.0))
        throw std::domain_error("airy: argument outside [-30, 30]");
    long double ai, aip;
    long double ax = std::abs(static_cast<long double>(x));
    if (ax <= 5.0L) {
        airy_maclaurin(x, ai, aip);
    } else if (ax >= 12.0L) {
        airy_asymptotic(x, ai, aip);
    } else {
        // Seed at the asymptotic edge on the same side and step toward x.
        long double a = (x > 0 ? 12.0L : -12.0L);
        airy_asymptotic(a, ai, aip);
        int steps = static_cast<int>(std::ceil((12.0L - ax) / 0.5L));
        long double h = (static_cast<long double>(x) - a) / steps;
        for (int k = 0; k < steps; ++k) {
            airy_ode_step(a, h, ai, aip);
            a += h;
        }
    }
    return AiryValue{static_cast<double>(ai), static_cast<double>(aip)};
}

// ---------------------------------------------------------------------------
// log-Gamma
// ---------------------------------------------------------------------------

namespace {

// Lanczos, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

cplx gamma_ln_pos(cplx z) {
    // valid for Re z >= 0.5
    cplx a{kLanczos[0], 0.0};
    for (int i = 1; i < 9; ++i)
        a += kLanczos[i] / (z - 1.0 + static_cast<double>(i));
    cplx t = z + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

cplx gamma_ln(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("gamma_ln: pole at nonpositive integer");
    if (z.real() >= 0.5) return gamma_ln_pos(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z),
    // up to a multiple of 2 pi i (callers only use exponentiated values or
    // differences, where that multiple drops out)
    return std::log(cplx{kPi, 0.0}) - std::log(std::sin(kPi * z)) - gamma_ln_pos(1.0 - z);
}

}  // namespace quad
