#ifndef VVMF_IGUSA_HPP
#define VVMF_IGUSA_HPP

#include "vvmf/quadpoly.hpp"
#include "vvmf/ratfun.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vvmf {

// Content of a unimodular quadratic form over Z_2, kept as a fixed
// decomposition into hyperbolic planes 2xy, at most one elliptic plane
// 2x^2+2xy+2y^2 and at most two square forms a x^2 (a odd, reduced mod 8).
struct UnimodBlock2 {
    int n_hyp = 0;
    int n_ell = 0;            // 0 or 1 after normalization
    std::vector<int> sq;      // odd residues mod 8, ascending, size <= 2

    int rank() const { return 2 * n_hyp + 2 * n_ell + static_cast<int>(sq.size()); }
    int eps() const { return n_ell % 2 ? -1 : 1; }
    bool empty() const { return n_hyp == 0 && n_ell == 0 && sq.empty(); }
    UnimodBlock2 merged(const UnimodBlock2& o) const;
    void normalize();  // E+E -> H+H, reduce to <= 2 squares
};

// Isospectral normal form  f ~ (+) p^i Q_i (+) L + c  at a prime p.
struct NormalFormAtP {
    Int p;
    // odd p: scale -> (rank, discriminant unit of the diagonalized block)
    std::map<long, std::pair<int, Rat>> odd_blocks;
    // p = 2: scale -> block content
    std::map<long, UnimodBlock2> two_blocks;
    std::optional<long> linear_val;  // L = p^v x on a fresh variable
    Rat c{0};
    // the doubling trick multiplies zeta by t; undo t_shift powers at the end
    int t_shift = 0;

    long max_scale() const;
    std::string canonical_key() const;
};

NormalFormAtP normal_form(const QuadPoly& f, const Int& p);

// Igusa zeta function of the normal form as a rational function in t = p^{-s}.
RatFun igusa_zeta(const NormalFormAtP& nf);
RatFun igusa_zeta_odd(const NormalFormAtP& nf);
RatFun igusa_zeta_two(const NormalFormAtP& nf);

// L_p(s) = sum_nu N_f(p^nu) p^{-nu s} evaluated exactly at t = p^j where
// t = p^{nvars - s}; poles are cancelled at the rational-function level and
// a genuine pole raises PoleError.
Rat lp_value(const QuadPoly& f, const Int& p, long j);
// (1 - t/p) * L_p, the pole-safe bracket used in the coefficient formulas.
Rat lp_bracket(const QuadPoly& f, const Int& p, long j);

// N_f(p^nu) for nu = 0..count-1 derived from the zeta function; oracle
// comparisons against count_solutions drive the test suite.
std::vector<Rat> solution_count_series(const QuadPoly& f, const Int& p, int count);

// Kloosterman sum K_c(beta,m,gamma,n,r) through the Moebius convolution
//   K_c = c^{e+1} sum_{a|c} mu(c/a) a^{-e} N(a).
Rat kloosterman_sum(const Lattice& L, int beta, const Rat& m, int gamma, const Rat& n,
                    const Rat& r, const Int& c);

}  // namespace vvmf

#endif
