#ifndef VVMF_RATIONAL_HPP
#define VVMF_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vvmf {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when a mathematical precondition fails (parity mismatch, pole,
// singular input, ...).  The CLI maps this to exit code 2.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

struct PoleError : MathError {
    explicit PoleError(const std::string& what) : MathError(what) {}
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw MathError("make_rat: zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Reduce into [0,1).
inline Rat mod1(const Rat& x) {
    Rat r = x - Rat(floor_rat(x));
    return r;
}

// p-adic valuation of a nonzero integer.
long valuation(const Int& n, const Int& p);

// p-adic valuation of a nonzero rational (may be negative).
long valuation(const Rat& x, const Int& p);

// x / p^{v_p(x)} for nonzero x.
Rat unit_part(const Rat& x, const Int& p);

// Kronecker symbol (top/bottom), total on Z x Z.
int kronecker(const Int& top, const Int& bottom);

// Prime factorization of |n| by trial division, n != 0.
std::vector<std::pair<Int, int>> factor(const Int& n);

// Signed squarefree part: n = s * f^2 with s squarefree, sign(s) = sign(n).
Int squarefree_part(const Int& n);
// Squarefree representative of the square class of a nonzero rational.
Int squarefree_part(const Rat& x);

// D = D0 * f^2 with D0 a fundamental discriminant.  Requires D != 0 and
// D = 0,1 mod 4.
std::pair<Int, Int> fundamental_discriminant(const Int& D);

// Fundamental discriminant attached to the square class of a nonzero
// rational number (1 or the squarefree part s if s = 1 mod 4, else 4s).
Int fundamental_discriminant_of_class(const Rat& x);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, long e);

Int factorial(unsigned long n);
Int double_factorial(long n);  // n!! with (-1)!! = 1
Int binomial(unsigned long n, unsigned long k);

std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

// Half-integer weights; value() = two/2.
struct HalfInt {
    int two = 0;
    HalfInt() = default;
    explicit HalfInt(int two_times) : two(two_times) {}
    bool is_integer() const { return two % 2 == 0; }
    Rat value() const { return make_rat(two, 2); }
    std::string str() const;
};

HalfInt parse_weight(const std::string& s);

}  // namespace vvmf

#endif
