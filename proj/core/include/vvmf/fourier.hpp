#ifndef VVMF_FOURIER_HPP
#define VVMF_FOURIER_HPP

#include "vvmf/lattice.hpp"
#include "vvmf/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vvmf {

// q-expansion of a vector-valued form: exact rational coefficients indexed
// by (component index, exponent n).  Coefficients are complete for n < prec;
// an absent key below prec means the coefficient was not computed (averaging
// may drop keys), not that it is zero -- computed series store zeros
// explicitly.
struct FourierExpansion {
    const Lattice* lattice = nullptr;
    HalfInt weight;
    Rat prec{0};
    std::map<std::pair<int, Rat>, Rat> coeff;

    Rat at(int gamma, const Rat& n) const {
        auto it = coeff.find({gamma, n});
        return it == coeff.end() ? Rat(0) : it->second;
    }
    bool has(int gamma, const Rat& n) const { return coeff.count({gamma, n}) != 0; }
    void set(int gamma, const Rat& n, Rat c) { coeff[{gamma, n}] = std::move(c); }

    FourierExpansion& operator+=(const FourierExpansion& o);
    FourierExpansion& operator-=(const FourierExpansion& o);
    FourierExpansion& operator*=(const Rat& s);
    friend FourierExpansion operator+(FourierExpansion a, const FourierExpansion& b) {
        return a += b;
    }
    friend FourierExpansion operator-(FourierExpansion a, const FourierExpansion& b) {
        return a -= b;
    }
    friend FourierExpansion operator*(const Rat& s, FourierExpansion a) { return a *= s; }

    bool operator==(const FourierExpansion& o) const {
        return coeff == o.coeff && prec == o.prec && weight.two == o.weight.two;
    }

    // Exponents n in Z - q(gamma) with lo <= n < hi.
    static std::vector<Rat> exponents(const Lattice& L, int gamma, const Rat& lo, const Rat& hi);

    // Multiply by a power series sum_{j>=j0} s[j - j0] q^j with integer
    // exponents (exact convolution per component).  The result is complete
    // for n < prec + j0 given this expansion is complete below prec.
    FourierExpansion convolve_integer_series(const std::vector<Int>& s, long j0,
                                             const Rat& out_prec) const;
};

// Coefficients of Delta = q prod (1-q^n)^24, exponents 1..N (index 0 <-> q^1).
std::vector<Int> delta_coefficients(int N);
// Coefficients of 1/Delta = q^{-1}(1 + ...), exponents -1..N (index 0 <-> q^{-1}).
std::vector<Rat> delta_inverse_coefficients(int N);

}  // namespace vvmf

#endif
