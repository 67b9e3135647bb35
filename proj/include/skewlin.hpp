#pragma once
// Pfaffians of dense skew-symmetric matrices, plus an executable catalog of
// the finite-dimensional Pfaffian identities the rest of the library leans on.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace skewlin {

using cplx = std::complex<double>;

// Dense skew-symmetric matrix of even order, row-major storage.
// Construction from raw entries checks A = -A^T to 1e-12 absolute and zeroes
// the diagonal; from_upper builds an exactly skew matrix from the strict
// upper triangle, which is how the kernel modules assemble their blocks.
class SkewMatrix {
public:
    SkewMatrix(std::vector<cplx> entries, int order);

    static SkewMatrix zero(int order);
    static SkewMatrix standard_j(int order);

    template <class F>
    static SkewMatrix from_upper(int order, F&& f) {
        SkewMatrix m = zero(order);
        for (int i = 0; i < order; ++i)
            for (int j = i + 1; j < order; ++j) {
                cplx v = f(i, j);
                m.a_[i * order + j] = v;
                m.a_[j * order + i] = -v;
            }
        return m;
    }

    int order() const { return n_; }
    cplx operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
    const std::vector<cplx>& entries() const { return a_; }

private:
    explicit SkewMatrix(int order) : n_(order), a_(std::size_t(order) * order) {}
    int n_;
    std::vector<cplx> a_;
};

// pf(A) via Parlett-Reid skew tridiagonalization with partial pivoting.
// Odd order returns 0 by convention.
cplx pfaffian(const SkewMatrix& A);

struct IdentityReport {
    std::string name;
    double residual;  // max over trials of |LHS-RHS| / (1+|RHS|)
    int trials;
    std::uint64_t seed;
};

// Runs `trials` randomized instances of the named identity at the given size
// and reports the worst residual.  Known tags: schur, schur_nl, sign_pf,
// block, diag_scale, congruence, rank2_det, resum, andreief_pf, fin_fredpf,
// pf_det_conj, pf_sympl.  Throws std::domain_error on an unknown tag or a
// size outside the per-identity bounds.
IdentityReport identity_check(const std::string& name, int size, int trials,
                              std::uint64_t seed);

}  // namespace skewlin
