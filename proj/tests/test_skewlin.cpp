#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skewlin.hpp"
#include "flatmoments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using skewlin::SkewMatrix;
using skewlin::cplx;
using skewlin::identity_check;
using skewlin::pfaffian;

namespace {

// Ground truth for the sign convention: the perfect-matching expansion,
// computed by recursing on the first remaining index,
//   pf(A|S) = sum_j (-1)^(j-1) A[s_0][s_j] pf(A | S minus {s_0, s_j}).
// 105 matchings at 8x8; do not call on anything larger.
cplx pf_matchings(const SkewMatrix& A, const std::vector<int>& idx) {
    if (idx.empty()) return {1.0, 0.0};
    cplx acc{0.0, 0.0};
    for (std::size_t j = 1; j < idx.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t l = 1; l < idx.size(); ++l)
            if (l != j) rest.push_back(idx[l]);
        double sgn = (j % 2 == 1) ? 1.0 : -1.0;
        acc += sgn * A(idx[0], idx[j]) * pf_matchings(A, rest);
    }
    return acc;
}

cplx pf_matchings(const SkewMatrix& A) {
    std::vector<int> idx(A.order());
    for (int i = 0; i < A.order(); ++i) idx[i] = i;
    return pf_matchings(A, idx);
}

SkewMatrix random_skew(int order, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return SkewMatrix::from_upper(order,
                                  [&](int, int) { return cplx(u(rng), u(rng)); });
}

}  // namespace

TEST_CASE("pfaffian closed forms at small order") {
    const cplx a{0.3, 0.1}, b{-1.2, 0.4}, c{0.9, -0.7};
    const cplx d{0.5, 0.0}, e{-0.8, 0.2}, f{1.1, 0.6};

    SkewMatrix A2 = SkewMatrix::from_upper(2, [&](int, int) { return a; });
    CHECK(std::abs(pfaffian(A2) - a) < 1e-15);

    SkewMatrix A4 = SkewMatrix::from_upper(4, [&](int i, int j) {
        if (i == 0 && j == 1) return a;
        if (i == 0 && j == 2) return b;
        if (i == 0 && j == 3) return c;
        if (i == 1 && j == 2) return d;
        if (i == 1 && j == 3) return e;
        return f;
    });
    cplx want = a * f - b * e + d * c;
    CHECK(std::abs(pfaffian(A4) - want) <= 1e-14 * (1.0 + std::abs(want)));

    for (int order : {2, 4, 8, 14})
        CHECK(std::abs(pfaffian(SkewMatrix::standard_j(order)) - cplx(1.0, 0.0)) < 1e-15);

    std::mt19937_64 rng(5);
    CHECK(pfaffian(random_skew(5, rng)) == cplx(0.0, 0.0));  // odd order
    CHECK(pfaffian(SkewMatrix::zero(6)) == cplx(0.0, 0.0));
    CHECK(pfaffian(SkewMatrix::zero(0)) == cplx(1.0, 0.0));
}

TEST_CASE("pfaffian agrees with the perfect-matching expansion") {
    std::mt19937_64 rng(12345);
    for (int order : {2, 4, 6, 8})
        for (int rep = 0; rep < 5; ++rep) {
            SkewMatrix A = random_skew(order, rng);
            cplx want = pf_matchings(A);
            cplx got = pfaffian(A);
            CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
        }
}

TEST_CASE("pfaffian squared equals the determinant") {
    std::mt19937_64 rng(777);
    for (int order = 2; order <= 20; order += 2) {
        SkewMatrix A = random_skew(order, rng);
        Eigen::MatrixXcd m(order, order);
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) m(i, j) = A(i, j);
        cplx det = m.determinant();
        cplx pf = pfaffian(A);
        CHECK(std::abs(pf * pf - det) <= 1e-9 * (1.0 + std::abs(det)));
    }
}

TEST_CASE("swapping a row-column pair flips the sign") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(0, 9);
    for (int rep = 0; rep < 10; ++rep) {
        SkewMatrix A = random_skew(10, rng);
        int i = pick(rng), j = pick(rng);
        while (j == i) j = pick(rng);
        auto p = [&](int k) { return k == i ? j : (k == j ? i : k); };
        SkewMatrix B = SkewMatrix::from_upper(
            10, [&](int k, int l) { return A(p(k), p(l)); });
        cplx pa = pfaffian(A), pb = pfaffian(B);
        CHECK(std::abs(pa + pb) <= 1e-11 * (1.0 + std::abs(pa)));
    }
}

TEST_CASE("construction checks skewness and zeroes the diagonal") {
    std::vector<cplx> good = {cplx(0, 0), cplx(1, 2), cplx(-1, -2), cplx(0, 0)};
    SkewMatrix m(good, 2);
    CHECK(m(0, 1) == cplx(1, 2));
    CHECK(m(1, 0) == cplx(-1, -2));

    std::vector<cplx> bad = {cplx(0, 0), cplx(1, 2), cplx(1, 2), cplx(0, 0)};
    CHECK_THROWS_AS(SkewMatrix(bad, 2), std::domain_error);
    CHECK_THROWS_AS(SkewMatrix(std::vector<cplx>(3), 2), std::domain_error);

    std::vector<cplx> tiny_diag = {cplx(4e-13, 0), cplx(1, 2), cplx(-1, -2),
                                   cplx(-4e-13, 0)};
    SkewMatrix md(tiny_diag, 2);
    CHECK(md(0, 0) == cplx(0, 0));
    CHECK(md(1, 1) == cplx(0, 0));
}

TEST_CASE("identity catalog: pinned examples") {
    auto schur = identity_check("schur", 6, 50, 7);
    CHECK(schur.residual < 1e-10);
    CHECK(schur.trials == 50);
    CHECK(schur.name == "schur");

    auto sign = identity_check("sign_pf", 4, 0, 0);
    CHECK(sign.residual == 0.0);
    CHECK(sign.trials == 8 * 8 * 8 * 8);  // every (m, sigma) combination, m <= 4

    auto rk2 = identity_check("rank2_det", 6, 50, 1);
    CHECK(rk2.residual < 1e-9);
}

TEST_CASE("identity catalog: every tag passes at its stated size") {
    struct Pick {
        const char* tag;
        int size;
        int trials;
    };
    const Pick picks[] = {
        {"schur", 6, 50},      {"schur_nl", 6, 50},    {"sign_pf", 4, 0},
        {"block", 4, 30},      {"block", 5, 30},       {"diag_scale", 5, 30},
        {"congruence", 8, 30}, {"rank2_det", 6, 50},   {"resum", 5, 10},
        {"andreief_pf", 3, 10}, {"fin_fredpf", 8, 30}, {"pf_det_conj", 8, 30},
        {"pf_sympl", 8, 30},
    };
    for (const auto& p : picks) {
        auto rep = identity_check(p.tag, p.size, p.trials, 7);
        INFO(p.tag << " size " << p.size);
        CHECK(rep.residual < 1e-9);
        CHECK(rep.residual >= 0.0);
    }
    CHECK(identity_check("sign_pf", 2, 0, 0).residual == 0.0);
    CHECK(identity_check("sign_pf", 6, 0, 0).residual == 0.0);
}

TEST_CASE("identity catalog: argument validation") {
    CHECK_THROWS_AS(identity_check("no_such_identity", 4, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("schur", 7, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("schur", 44, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("sign_pf", 10, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("resum", 7, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("andreief_pf", 7, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("block", 0, 5, 1), std::domain_error);
    CHECK_THROWS_AS(identity_check("block", 41, 5, 1), std::domain_error);
}

TEST_CASE("coincident-point limit of the paired two-point factors") {
    // h1*h2 extends continuously to w1 = s_a tau^(-n_a/2), w2 = s_b tau^(-n_b/2)
    // with an explicit closed form; approach the point in the w1 variable and
    // compare.  The value grows like tau^(-n_a n_b / 2), so the comparison is
    // made relative to that scale.
    const double tau = 0.5, h = 1e-6;
    flatmoments::Germs g(tau, 0.8);  // time enters neither factor
    for (int sa : {1, -1})
        for (int sb : {1, -1})
            for (int na = 0; na <= 5; ++na)
                for (int nb = 0; nb <= 5; ++nb) {
                    if (sa * sb == 1 && na == 0 && nb == 0) {
                        CHECK_THROWS_AS(g.h_limit(sa, na, sb, nb), std::domain_error);
                        continue;
                    }
                    cplx w1 = double(sa) * std::pow(tau, -0.5 * na) * (1.0 + h);
                    cplx w2 = double(sb) * std::pow(tau, -0.5 * nb);
                    cplx got = g.h1(w1, w2, na, nb) * g.h2(w1, w2, na, nb);
                    double lim = g.h_limit(sa, na, sb, nb);
                    double scale = 1.0 + std::abs(lim) + std::pow(tau, -0.5 * na * nb);
                    INFO("sa=" << sa << " na=" << na << " sb=" << sb << " nb=" << nb
                               << " got=" << got.real() << " lim=" << lim);
                    CHECK(std::abs(got - lim) <= 1e-4 * scale);
                    CHECK(std::abs(got.imag()) <= 1e-8 * scale);
                }
}
