#include "fredholm.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "skewlin.hpp"

namespace fredholm {

namespace {

void require_halfline(const quad::QuadratureRule& rule, const char* who) {
    if (rule.kind != quad::QuadratureRule::Kind::halfline_gl)
        throw std::domain_error(std::string(who) + ": needs a half-line rule");
}

// M_{(i,a),(j,b)} = sqrt(w_i w_j) K_{a,b}(x_i, x_j), rows (i,a) interleaved.
// Kernel evaluations dominate the cost (entries can hide contour integrals),
// so rows are farmed out to async tasks when more than one core is present.
Eigen::MatrixXcd assemble_blocks(const Kernel2x2& kernel,
                                 const quad::QuadratureRule& rule) {
    const int n = static_cast<int>(rule.nodes.size());
    std::vector<double> x(n), sw(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rule.nodes[i].real();
        sw[i] = std::sqrt(rule.weights[i].real());
    }
    Eigen::MatrixXcd m(2 * n, 2 * n);
    auto fill_rows = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i)
            for (int j = 0; j < n; ++j) {
                Kernel2x2::Blocks b = kernel.eval(x[i], x[j]);
                double w = sw[i] * sw[j];
                m(2 * i, 2 * j) = w * b[0];
                m(2 * i, 2 * j + 1) = w * b[1];
                m(2 * i + 1, 2 * j) = w * b[2];
                m(2 * i + 1, 2 * j + 1) = w * b[3];
            }
    };
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 1 && n >= 16) {
        int chunks = static_cast<int>(std::min<unsigned>(hw, 8));
        std::vector<std::future<void>> tasks;
        for (int c = 0; c < chunks; ++c) {
            int lo = n * c / chunks, hi = n * (c + 1) / chunks;
            tasks.push_back(std::async(std::launch::async, fill_rows, lo, hi));
        }
        for (auto& t : tasks) t.get();
    } else {
        fill_rows(0, n);
    }
    return m;
}

double det_route(const Eigen::MatrixXcd& m) {
    const int two_n = static_cast<int>(m.rows());
    Eigen::MatrixXcd jm = Eigen::MatrixXcd::Identity(two_n, two_n);
    for (int i = 0; i < two_n; i += 2) {
        jm.row(i) += m.row(i + 1);
        jm.row(i + 1) -= m.row(i);
    }
    return jm.partialPivLu().determinant().real();
}

cplx pf_route(const Eigen::MatrixXcd& m) {
    const int two_n = static_cast<int>(m.rows());
    // J_d minus the skew part of M; averaging M with -M^T discards any
    // symmetric residual the kernel evaluation may carry (it cancels from
    // the Pfaffian anyway) and gives from_upper exactly skew input.
    skewlin::SkewMatrix s = skewlin::SkewMatrix::from_upper(two_n, [&](int i, int j) {
        cplx jd = (j == i + 1 && i % 2 == 0) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        return jd - 0.5 * (m(i, j) - m(j, i));
    });
    return skewlin::pfaffian(s);
}

}  // namespace

double nystrom_det(const std::function<cplx(double, double)>& kernel,
                   const quad::QuadratureRule& rule) {
    require_halfline(rule, "nystrom_det");
    const int n = static_cast<int>(rule.nodes.size());
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = std::sqrt(rule.weights[i].real() * rule.weights[j].real());
            m(i, j) = w * kernel(rule.nodes[i].real(), rule.nodes[j].real());
        }
    Eigen::MatrixXcd im = Eigen::MatrixXcd::Identity(n, n) - m;
    return im.partialPivLu().determinant().real();
}

double nystrom_pf(const Kernel2x2& kernel, const quad::QuadratureRule& rule) {
    require_halfline(rule, "nystrom_pf");
    Eigen::MatrixXcd m = assemble_blocks(kernel, rule);
    cplx pf = pf_route(m);
#ifndef NDEBUG
    double det = det_route(m);
    assert(std::abs(pf * pf - det) <= 1e-9 * (1.0 + std::abs(det)));
#endif
    return pf.real();
}

double pf_det_residual(const Kernel2x2& kernel, const quad::QuadratureRule& rule) {
    require_halfline(rule, "pf_det_residual");
    Eigen::MatrixXcd m = assemble_blocks(kernel, rule);
    cplx pf = pf_route(m);
    double det = det_route(m);
    return std::abs(pf * pf - det) / (1.0 + std::abs(det));
}

}  // namespace fredholm
