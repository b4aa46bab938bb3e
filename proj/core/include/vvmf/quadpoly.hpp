#ifndef VVMF_QUADPOLY_HPP
#define VVMF_QUADPOLY_HPP

#include "vvmf/lattice.hpp"
#include "vvmf/rational.hpp"

#include <vector>

namespace vvmf {

// f(x) = x^T A x + b^T x + c with A symmetric rational.  The monomial
// coefficients are A_ii (of x_i^2), 2 A_ij (of x_i x_j, i < j), b_i and c;
// the polynomials arising from lattice data are integer valued on Z^n.
struct QuadPoly {
    int n = 0;
    std::vector<Rat> A;  // n*n, row-major, symmetric
    std::vector<Rat> b;
    Rat c{0};

    QuadPoly() = default;
    explicit QuadPoly(int nvars)
        : n(nvars), A(static_cast<size_t>(nvars) * nvars, Rat(0)), b(nvars, Rat(0)) {}

    Rat& a(int i, int j) { return A[static_cast<size_t>(i) * n + j]; }
    const Rat& a(int i, int j) const { return A[static_cast<size_t>(i) * n + j]; }

    Rat eval(const std::vector<Int>& x) const;
    bool is_p_integral(const Int& p) const;  // all monomial coefficients in Z_p
    bool quadratic_is_zero() const;
};

// f(v, lambda) = q(v + lambda beta - gamma) + m lambda^2 - r lambda + n
// in e + 1 variables (v, lambda); integer coefficients.
QuadPoly jacobi_polynomial(const Lattice& L, int beta, int gamma, const Rat& m, const Rat& n,
                           const Rat& r);

// f(v) = q(v - gamma) + n in e variables; integer coefficients.
QuadPoly bk_polynomial(const Lattice& L, int gamma, const Rat& n);

// f plus q-part of a hyperbolic plane on two fresh variables (f + x*y).
QuadPoly append_hyperbolic(const QuadPoly& f);

// Exact number of solutions of f = 0 mod p^nu by direct enumeration.
// Guard: p^(nu*n) must stay below 10^8 states.
Int count_solutions(const QuadPoly& f, const Int& p, int nu);

}  // namespace vvmf

#endif
