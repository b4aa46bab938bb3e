#ifndef VVMF_WEIL_HPP
#define VVMF_WEIL_HPP

#include "vvmf/fourier.hpp"
#include "vvmf/lattice.hpp"

#include <array>
#include <complex>
#include <vector>

namespace vvmf {

// Dense complex matrix indexed by discriminant-group elements.  These
// matrices serve validation only; the exact coefficient pipeline never
// touches them.
struct RepMatrix {
    int dim = 0;
    std::vector<std::complex<double>> a;

    RepMatrix() = default;
    explicit RepMatrix(int n) : dim(n), a(static_cast<size_t>(n) * n, {0.0, 0.0}) {}
    std::complex<double>& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const std::complex<double>& at(int r, int c) const {
        return a[static_cast<size_t>(r) * dim + c];
    }
    RepMatrix operator*(const RepMatrix& o) const;
    RepMatrix adjoint() const;
    RepMatrix inverse_unitary() const { return adjoint(); }
    double max_abs_diff(const RepMatrix& o) const;
    // ||A A* - I||_max
    double unitarity_defect() const;
    bool equal_up_to_phase(const RepMatrix& o, double tol, std::complex<double>* phase = nullptr) const;
};

// 2x2 integer matrix (a b; c d), row-major.
using Mat2 = std::array<long, 4>;

// Generators of the Weil representation rho.
RepMatrix rho_T(const Lattice& L);
RepMatrix rho_S(const Lattice& L);
RepMatrix rho_Z(const Lattice& L);

// Shintani's closed formula for rho(M), M in SL2(Z); branch = -1 multiplies
// by rho(Z^2) (the other metaplectic preimage).
RepMatrix rho_matrix(const Lattice& L, const Mat2& M, int branch = 1);

// Product of generator matrices along a word in {'T','t','S','s'}
// (lowercase = inverse); also returns the resulting SL2 matrix.
RepMatrix rho_word(const Lattice& L, const std::string& word, Mat2* M_out = nullptr);

// Schroedinger representation sigma_beta(lambda, mu, t).
RepMatrix sigma_action(const Lattice& L, int beta, long lambda, long mu, long t);

// Right action of SL2 on the Heisenberg group.
std::array<long, 3> heisenberg_act(const std::array<long, 3>& zeta, const Mat2& M);

// Exact averaging operator A_beta of the appendix:
//   A_beta F = sum_{lambda mod d_beta^2} sum_{<beta,gamma> - lambda q(beta) in Z}
//              f_gamma e_{gamma - lambda beta}
FourierExpansion average(const Lattice& L, int beta, const FourierExpansion& F);

}  // namespace vvmf

#endif
