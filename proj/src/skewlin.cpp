#include "skewlin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

#include "kernelops.hpp"

namespace skewlin {

SkewMatrix::SkewMatrix(std::vector<cplx> entries, int order) : n_(order) {
    if (order < 0 || entries.size() != std::size_t(order) * order)
        throw std::domain_error("SkewMatrix: entry count does not match order");
    for (int i = 0; i < order; ++i)
        for (int j = i; j < order; ++j) {
            cplx resid = entries[std::size_t(i) * order + j] +
                         entries[std::size_t(j) * order + i];
            if (std::abs(resid) > 1e-12)
                throw std::domain_error("SkewMatrix: entries not skew-symmetric");
        }
    a_ = std::move(entries);
    for (int i = 0; i < order; ++i) a_[std::size_t(i) * order + i] = 0.0;
}

SkewMatrix SkewMatrix::zero(int order) {
    if (order < 0) throw std::domain_error("SkewMatrix: negative order");
    return SkewMatrix(order);
}

SkewMatrix SkewMatrix::standard_j(int order) {
    if (order < 0 || order % 2)
        throw std::domain_error("SkewMatrix: J needs even order");
    SkewMatrix m = zero(order);
    for (int i = 0; i + 1 < order; i += 2) {
        m.a_[std::size_t(i) * order + i + 1] = 1.0;
        m.a_[std::size_t(i + 1) * order + i] = -1.0;
    }
    return m;
}

cplx pfaffian(const SkewMatrix& A) {
    const int n = A.order();
    if (n % 2) return {0.0, 0.0};
    if (n == 0) return {1.0, 0.0};

    std::vector<cplx> a = A.entries();
    auto at = [&](int i, int j) -> cplx& { return a[std::size_t(i) * n + j]; };

    cplx pf(1.0, 0.0);
    for (int k = 0; k + 1 < n; k += 2) {
        // bring the largest entry of column k (below the diagonal) to row k+1
        int kp = k + 1;
        double best = std::abs(at(k + 1, k));
        for (int i = k + 2; i < n; ++i)
            if (std::abs(at(i, k)) > best) { best = std::abs(at(i, k)); kp = i; }
        if (kp != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(at(k + 1, j), at(kp, j));
            for (int i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, kp));
            pf = -pf;
        }

        const cplx piv = at(k, k + 1);
        if (piv == cplx(0.0, 0.0)) return {0.0, 0.0};
        pf *= piv;

        if (k + 2 < n) {
            const int m = n - (k + 2);
            std::vector<cplx> tau(m), col(m);
            for (int j = 0; j < m; ++j) tau[j] = at(k, k + 2 + j) / piv;
            for (int i = 0; i < m; ++i) col[i] = at(k + 2 + i, k + 1);
            // rank-2 skew update of the trailing block
            for (int i = 0; i < m; ++i) {
                cplx* row = &at(k + 2 + i, k + 2);
                kernelops::caxpy(tau[i], col.data(), row, std::size_t(m));
                kernelops::caxpy(-col[i], tau.data(), row, std::size_t(m));
            }
        }
    }
    return pf;
}

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

struct Draw {
    std::mt19937_64 gen;
    std::uniform_real_distribution<double> u{0.0, 1.0};
    explicit Draw(std::uint64_t seed) : gen(seed) {}
    cplx operator()() { return {u(gen), u(gen)}; }
    double pos() { return 0.1 + u(gen); }
};

Mat random_mat(Draw& d, int r, int c) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = d();
    return m;
}

Mat random_skew(Draw& d, int n) {
    Mat m = random_mat(d, n, n);
    return 0.5 * (m - m.transpose()).eval();
}

SkewMatrix to_skewmatrix(const Mat& m) {
    // discard the roundoff-symmetric part so the constructor check cannot trip
    return SkewMatrix::from_upper(int(m.rows()), [&](int i, int j) {
        return 0.5 * (m(i, j) - m(j, i));
    });
}

cplx pf_of(const Mat& m) { return pfaffian(to_skewmatrix(m)); }

Mat standard_j_mat(int n) {
    Mat j = Mat::Zero(n, n);
    for (int i = 0; i + 1 < n; i += 2) {
        j(i, i + 1) = 1.0;
        j(i + 1, i) = -1.0;
    }
    return j;
}

// exp(M) by scaling-and-squaring with a plain Taylor series; fine for the
// modest norms used below.
Mat expm(const Mat& m) {
    int s = 0;
    double nrm = m.cwiseAbs().rowwise().sum().maxCoeff();
    while (nrm > 0.5) { nrm *= 0.5; ++s; }
    Mat x = m / std::pow(2.0, s);
    Mat term = Mat::Identity(m.rows(), m.cols());
    Mat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * x).eval() / double(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
    return sum;
}

double rel_resid(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double trial_schur(Draw& d, int k) {
    std::vector<cplx> x(k);
    for (auto& v : x) v = d();
    cplx prod(1.0, 0.0);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) prod *= (x[a] - x[b]) / (x[a] + x[b]);
    cplx pf = pfaffian(SkewMatrix::from_upper(
        k, [&](int a, int b) { return (x[a] - x[b]) / (x[a] + x[b]); }));
    return rel_resid(pf, prod);
}

double trial_schur_nl(Draw& d, int k) {
    std::vector<cplx> y(k);
    for (auto& v : y) {
        cplx x = d();
        v = (x - 1.0) / (x + 1.0);
    }
    cplx prod(1.0, 0.0);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) prod *= (y[b] - y[a]) / (y[a] * y[b] - 1.0);
    cplx pf = pfaffian(SkewMatrix::from_upper(
        k, [&](int a, int b) { return (y[b] - y[a]) / (y[a] * y[b] - 1.0); }));
    return rel_resid(pf, prod);
}

int sgn_int(int v) { return (v > 0) - (v < 0); }

int pow_m1(int e) { return (e % 2 == 0) ? 1 : -1; }

// enumerate every (m_vec, sigma_vec) with entries m <= 4; exact in doubles
double check_sign_pf(int k, int& trials_out) {
    const int mmax = 4;
    long combos = 1;
    for (int a = 0; a < k; ++a) combos *= 2 * mmax;
    double worst = 0.0;
    std::vector<int> m(k), sig(k);
    for (long code = 0; code < combos; ++code) {
        long c = code;
        for (int a = 0; a < k; ++a) {
            m[a] = int(c % mmax) + 1;
            c /= mmax;
            sig[a] = (c % 2) ? 1 : -1;
            c /= 2;
        }
        // (-sigma_a sigma_b)^e is (-1)^e for equal signs and 1 otherwise
        auto neg_ss_pow = [&](int a, int b, int e) {
            return (sig[a] * sig[b] > 0) ? pow_m1(e) : 1;
        };
        // Sorting by sign splits the matrix into two diagonal blocks joined by
        // a rank-one cross block of -1's.  When both sign groups have odd size
        // the bordered factorization picks up one extra sign, so the product
        // form carries (-1)^(n_plus * n_minus).
        int nminus = 0;
        for (int a = 0; a < k; ++a)
            if (sig[a] < 0) ++nminus;
        double lhs = (nminus % 2 == 1 && (k - nminus) % 2 == 1) ? -1.0 : 1.0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                lhs *= neg_ss_pow(a, b, std::min(m[a], m[b]) + 1) *
                       sgn_int(sig[a] * m[a] - sig[b] * m[b]);
        cplx pf = pfaffian(SkewMatrix::from_upper(k, [&](int a, int b) {
            int s = neg_ss_pow(a, b, std::min(m[a], m[b]));
            return cplx(s * sgn_int(sig[b] * m[b] - sig[a] * m[a]), 0.0);
        }));
        worst = std::max(worst, std::abs(pf - cplx(lhs, 0.0)));
    }
    trials_out = int(combos);
    return worst;
}

double trial_block(Draw& d, int k) {
    Mat A = random_skew(d, k), B = random_skew(d, k);
    Vec U = random_mat(d, k, 1), V = random_mat(d, k, 1);
    Mat D = U * V.transpose();
    Mat M(2 * k, 2 * k);
    M << A, D, -D.transpose(), B;
    cplx lhs = pf_of(M);
    cplx rhs;
    if (k % 2 == 0) {
        rhs = pf_of(A) * pf_of(B);
    } else {
        Mat Ab(k + 1, k + 1), Bb(k + 1, k + 1);
        Ab << A, U, -U.transpose(), Mat::Zero(1, 1);
        Bb << B, V, -V.transpose(), Mat::Zero(1, 1);
        rhs = pf_of(Ab) * pf_of(Bb);
    }
    return rel_resid(lhs, rhs);
}

double trial_diag_scale(Draw& d, int k) {
    Mat A = random_skew(d, k), B = random_skew(d, k), U = random_mat(d, k, k);
    Mat M(2 * k, 2 * k);
    M << A, U, -U.transpose(), B;
    Vec diag(2 * k);
    cplx prod(1.0, 0.0);
    for (int a = 0; a < 2 * k; ++a) diag(a) = d();
    for (int a = 0; a < k; ++a) prod *= diag(a) * diag(k + a);
    Mat scaled = diag.asDiagonal() * M * diag.asDiagonal();
    return rel_resid(prod * pf_of(M), pf_of(scaled));
}

double trial_congruence(Draw& d, int n) {
    Mat A = random_skew(d, n), B = random_mat(d, n, n);
    cplx lhs = pf_of((B * A * B.transpose()).eval());
    cplx rhs = B.determinant() * pf_of(A);
    return rel_resid(lhs, rhs);
}

double trial_rank2_det(Draw& d, int n) {
    Mat A = random_skew(d, n), B = random_skew(d, n);
    Vec u = random_mat(d, n, 1), v = random_mat(d, n, 1);
    Mat R = u * v.transpose();
    Mat P(2 * n, 2 * n), Q(2 * n, 2 * n);
    P << Mat::Identity(n, n), B, A, Mat::Identity(n, n);
    Q << R, Mat::Zero(n, n), Mat::Zero(n, n), R.transpose();
    Mat iab = Mat::Identity(n, n) - A * B;
    cplx bracket = 1.0 + (u.transpose() * iab.partialPivLu().solve(v))(0, 0);
    cplx lhs = (P + Q).determinant();
    cplx rhs = P.determinant() * bracket * bracket;
    return rel_resid(lhs, rhs);
}

// discrete instance of the resummation identity: split a sum of two skew
// kernels inside a Pfaffian against a third one, n = 2 pairs of points
double trial_resum(Draw& d, int npts) {
    const int n = 2, two_n = 2 * n;
    Mat A = random_skew(d, npts), B = random_skew(d, npts), C = random_skew(d, npts);
    std::vector<double> mu(npts);
    for (auto& w : mu) w = d.pos();

    std::vector<int> idx(two_n);
    cplx lhs = 0.0, rhs = 0.0;
    long tuples = 1;
    for (int i = 0; i < two_n; ++i) tuples *= npts;
    for (long code = 0; code < tuples; ++code) {
        long c = code;
        double wgt = 1.0;
        for (int i = 0; i < two_n; ++i) {
            idx[i] = int(c % npts);
            c /= npts;
            wgt *= mu[idx[i]];
        }
        auto sub_pf = [&](const Mat& K, int lo, int hi) {
            int len = hi - lo;
            return pfaffian(SkewMatrix::from_upper(len, [&](int a, int b) {
                return K(idx[lo + a], idx[lo + b]);
            }));
        };
        cplx pfC = sub_pf(C, 0, two_n);
        cplx pfAB = pfaffian(SkewMatrix::from_upper(two_n, [&](int a, int b) {
            return A(idx[a], idx[b]) + B(idx[a], idx[b]);
        }));
        lhs += wgt * pfAB * pfC;
        for (int k1 = 0; k1 <= n; ++k1) {
            int k2 = n - k1;
            double fact = 1.0;
            for (int i = 2; i <= 2 * k1; ++i) fact *= i;
            for (int i = 2; i <= 2 * k2; ++i) fact *= i;
            rhs += wgt / fact * sub_pf(A, 0, 2 * k1) * sub_pf(B, 2 * k1, two_n) * pfC;
        }
    }
    // expanding pf(A+B) over index subsets gives binomial(2n, 2k1) terms per
    // split, and binomial(2n, 2k1)/(2n)! is the 1/((2k1)!(2k2)!) weight above,
    // so the joint integral is normalized by (2n)!
    double fact2n = 1.0;
    for (int i = 2; i <= two_n; ++i) fact2n *= i;
    lhs /= fact2n;
    return rel_resid(lhs, rhs);
}

// discrete instance of the push-the-integrals-inside identity for a bordered
// Pfaffian of kernel, cross and constant blocks
double trial_andreief(Draw& d, int k) {
    const int npts = 4;
    // families A_{a,b}(x,y) with A_{a,b}(x,y) = -A_{b,a}(y,x)
    std::vector<Mat> Afam(std::size_t(k) * k, Mat::Zero(npts, npts));
    auto A = [&](int a, int b) -> Mat& { return Afam[std::size_t(a) * k + b]; };
    for (int a = 0; a < k; ++a) {
        A(a, a) = random_skew(d, npts);
        for (int b = a + 1; b < k; ++b) {
            A(a, b) = random_mat(d, npts, npts);
            A(b, a) = -A(a, b).transpose();
        }
    }
    std::vector<Mat> Ufam(std::size_t(k) * k);  // U_{a,b}(x), column per x
    for (auto& u : Ufam) u = random_mat(d, 1, npts);
    auto U = [&](int a, int b) -> const Mat& { return Ufam[std::size_t(a) * k + b]; };
    Mat Bmat = random_skew(d, k);
    Mat phi = random_mat(d, k, npts);
    std::vector<double> mu(npts);
    for (auto& w : mu) w = d.pos();

    cplx lhs = 0.0;
    std::vector<int> idx(k);
    long tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= npts;
    for (long code = 0; code < tuples; ++code) {
        long c = code;
        cplx wgt(1.0, 0.0);
        for (int i = 0; i < k; ++i) {
            idx[i] = int(c % npts);
            c /= npts;
            wgt *= mu[idx[i]] * phi(i, idx[i]);
        }
        Mat M(2 * k, 2 * k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                M(a, b) = A(a, b)(idx[a], idx[b]);
                M(a, k + b) = U(a, b)(0, idx[a]);
                M(k + a, b) = -U(b, a)(0, idx[b]);
                M(k + a, k + b) = Bmat(a, b);
            }
        lhs += wgt * pf_of(M);
    }

    Mat M(2 * k, 2 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            cplx aa = 0.0, uu = 0.0, ul = 0.0;
            for (int x = 0; x < npts; ++x) {
                uu += mu[x] * phi(a, x) * U(a, b)(0, x);
                ul += mu[x] * phi(b, x) * U(b, a)(0, x);
                for (int y = 0; y < npts; ++y)
                    aa += mu[x] * mu[y] * phi(a, x) * phi(b, y) * A(a, b)(x, y);
            }
            M(a, b) = aa;
            M(a, k + b) = uu;
            M(k + a, b) = -ul;
            M(k + a, k + b) = Bmat(a, b);
        }
    return rel_resid(lhs, pf_of(M));
}

double trial_fin_fredpf(Draw& d, int n) {
    Mat A = random_skew(d, n);
    Mat J = standard_j_mat(n);
    cplx pf = pf_of((J + A).eval());
    cplx det = (Mat::Identity(n, n) - J * A).determinant();
    return rel_resid(pf * pf, det);
}

double trial_pf_det_conj(Draw& d, int n) {
    Mat K = random_skew(d, n);
    Mat B = Mat::Identity(n, n) + 0.5 * random_mat(d, n, n);
    Mat J = standard_j_mat(n);
    cplx lhs = pf_of((B.transpose() * (J + K) * B).eval());
    cplx rhs = B.determinant() * pf_of((J + K).eval());
    return rel_resid(lhs, rhs);
}

double trial_pf_sympl(Draw& d, int n) {
    Mat K = random_skew(d, n);
    Mat J = standard_j_mat(n);
    Mat S = random_mat(d, n, n);
    S = (0.5 / n * (S + S.transpose())).eval();
    Mat M = expm((J * S).eval());  // M^T J M = J
    cplx lhs = pf_of((J + M.transpose() * K * M).eval());
    cplx rhs = pf_of((J + K).eval());
    return rel_resid(lhs, rhs);
}

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace

IdentityReport identity_check(const std::string& name, int size, int trials,
                              std::uint64_t seed) {
    require(trials >= 1 || name == "sign_pf", "identity_check: trials must be >= 1");
    Draw d(seed);
    double worst = 0.0;
    int done = trials;

    auto run = [&](auto&& trial) {
        for (int t = 0; t < trials; ++t) worst = std::max(worst, trial());
    };

    if (name == "schur") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "schur: size must be even, <= 40");
        run([&] { return trial_schur(d, size); });
    } else if (name == "schur_nl") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "schur_nl: size must be even, <= 40");
        run([&] { return trial_schur_nl(d, size); });
    } else if (name == "sign_pf") {
        require(size >= 2 && size <= 8 && size % 2 == 0, "sign_pf: size must be even, <= 8");
        worst = check_sign_pf(size, done);
    } else if (name == "block") {
        require(size >= 1 && size <= 40, "block: size must be in [1,40]");
        run([&] { return trial_block(d, size); });
    } else if (name == "diag_scale") {
        require(size >= 1 && size <= 40, "diag_scale: size must be in [1,40]");
        run([&] { return trial_diag_scale(d, size); });
    } else if (name == "congruence") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "congruence: size must be even, <= 40");
        run([&] { return trial_congruence(d, size); });
    } else if (name == "rank2_det") {
        require(size >= 1 && size <= 40, "rank2_det: size must be in [1,40]");
        run([&] { return trial_rank2_det(d, size); });
    } else if (name == "resum") {
        require(size >= 2 && size <= 6, "resum: size (point count) must be in [2,6]");
        run([&] { return trial_resum(d, size); });
    } else if (name == "andreief_pf") {
        require(size >= 1 && size <= 6, "andreief_pf: size must be in [1,6]");
        run([&] { return trial_andreief(d, size); });
    } else if (name == "fin_fredpf") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "fin_fredpf: size must be even, <= 40");
        run([&] { return trial_fin_fredpf(d, size); });
    } else if (name == "pf_det_conj") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "pf_det_conj: size must be even, <= 40");
        run([&] { return trial_pf_det_conj(d, size); });
    } else if (name == "pf_sympl") {
        require(size >= 2 && size <= 40 && size % 2 == 0, "pf_sympl: size must be even, <= 40");
        run([&] { return trial_pf_sympl(d, size); });
    } else {
        throw std::domain_error("identity_check: unknown identity tag '" + name + "'");
    }
    return IdentityReport{name, worst, done, seed};
}

}  // namespace skewlin
