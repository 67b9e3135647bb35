#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kernelops.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using kernelops::cplx;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    return v;
}

std::vector<cplx> random_cvec(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(u(gen), u(gen));
    return v;
}

const std::vector<std::size_t> sizes = {0, 1, 2, 3, 4, 5, 7, 8, 16, 31, 64, 257, 1000};

}  // namespace

TEST_CASE("dispatcher picked a known path") {
    std::string isa = kernelops::active_isa();
    CHECK((isa == "avx2" || isa == "neon" || isa == "scalar"));
}

TEST_CASE("dot known values") {
    double a[3] = {1, 2, 3}, b[3] = {4, 5, 6};
    CHECK(kernelops::dot(a, b, 3) == doctest::Approx(32.0).epsilon(1e-15));
    CHECK(kernelops::dot(a, b, 0) == 0.0);
}

TEST_CASE("cdot known values") {
    cplx a[2] = {{0, 1}, {1, 0}}, b[2] = {{0, 1}, {2, 0}};
    cplx r = kernelops::cdot(a, b, 2);  // i*i + 1*2 = 1
    CHECK(std::abs(r - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("dot and axpy match scalar reference") {
    for (std::size_t n : sizes) {
        auto a = random_vec(n, 17 + unsigned(n));
        auto b = random_vec(n, 91 + unsigned(n));
        double want = kernelops::detail::dot_scalar(a.data(), b.data(), n);
        double got = kernelops::dot(a.data(), b.data(), n);
        CHECK(std::abs(got - want) <= 1e-13 * (1.0 + std::abs(want)) * double(n + 1));

        auto y1 = random_vec(n, 3 + unsigned(n));
        auto y2 = y1;
        kernelops::detail::axpy_scalar(0.7, a.data(), y1.data(), n);
        kernelops::axpy(0.7, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (1.0 + std::abs(y1[i])));
    }
}

TEST_CASE("cdot and caxpy match scalar reference") {
    const cplx alpha(0.3, -1.2);
    for (std::size_t n : sizes) {
        auto a = random_cvec(n, 23 + unsigned(n));
        auto b = random_cvec(n, 57 + unsigned(n));
        cplx want = kernelops::detail::cdot_scalar(a.data(), b.data(), n);
        cplx got = kernelops::cdot(a.data(), b.data(), n);
        CHECK(std::abs(got - want) <= 1e-13 * (1.0 + std::abs(want)) * double(n + 1));

        auto y1 = random_cvec(n, 5 + unsigned(n));
        auto y2 = y1;
        kernelops::detail::caxpy_scalar(alpha, a.data(), y1.data(), n);
        kernelops::caxpy(alpha, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (1.0 + std::abs(y1[i])));
    }
}

#if defined(KERNELOPS_HAVE_AVX2_TU)
TEST_CASE("avx2 variants agree with scalar when the CPU has them") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return;
    for (std::size_t n : sizes) {
        auto a = random_vec(n, 101 + unsigned(n));
        auto b = random_vec(n, 211 + unsigned(n));
        double want = kernelops::detail::dot_scalar(a.data(), b.data(), n);
        double got = kernelops::detail::dot_avx2(a.data(), b.data(), n);
        CHECK(std::abs(got - want) <= 1e-13 * (1.0 + std::abs(want)) * double(n + 1));

        auto ca = random_cvec(n, 301 + unsigned(n));
        auto cb = random_cvec(n, 401 + unsigned(n));
        cplx cwant = kernelops::detail::cdot_scalar(ca.data(), cb.data(), n);
        cplx cgot = kernelops::detail::cdot_avx2(ca.data(), cb.data(), n);
        CHECK(std::abs(cgot - cwant) <= 1e-13 * (1.0 + std::abs(cwant)) * double(n + 1));

        auto y1 = random_cvec(n, 7 + unsigned(n));
        auto y2 = y1;
        kernelops::detail::caxpy_scalar(cplx(-0.8, 0.44), ca.data(), y1.data(), n);
        kernelops::detail::caxpy_avx2(cplx(-0.8, 0.44), ca.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (1.0 + std::abs(y1[i])));

        auto r1 = random_vec(n, 9 + unsigned(n));
        auto r2 = r1;
        kernelops::detail::axpy_scalar(-1.25, a.data(), r1.data(), n);
        kernelops::detail::axpy_avx2(-1.25, a.data(), r2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(r1[i] - r2[i]) <= 1e-14 * (1.0 + std::abs(r1[i])));
    }
}
#endif
