#include "vvmf/rational.hpp"

#include <sstream>

namespace vvmf {

long valuation(const Int& n, const Int& p) {
    if (n == 0) throw MathError("valuation of 0");
    Int m = abs(n);
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        ++v;
        m = q;
    }
    return v;
}

long valuation(const Rat& x, const Int& p) {
    if (x == 0) throw MathError("valuation of 0");
    long v = valuation(Int(x.get_num()), p);
    if (x.get_den() != 1) v -= valuation(Int(x.get_den()), p);
    return v;
}

Rat unit_part(const Rat& x, const Int& p) {
    long v = valuation(x, p);
    Rat pv(pow_int(p, static_cast<unsigned long>(v < 0 ? -v : v)));
    return v >= 0 ? Rat(x / pv) : Rat(x * pv);
}

int kronecker(const Int& top, const Int& bottom) {
    return mpz_kronecker(top.get_mpz_t(), bottom.get_mpz_t());
}

std::vector<std::pair<Int, int>> factor(const Int& n) {
    if (n == 0) throw MathError("factor(0)");
    std::vector<std::pair<Int, int>> out;
    Int m = abs(n);
    Int p = 2;
    while (m > 1) {
        if (p * p > m) {
            out.emplace_back(m, 1);
            break;
        }
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p = (p == 2) ? Int(3) : Int(p + 2);
    }
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0) throw MathError("squarefree_part(0)");
    Int s = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factor(n))
        if (e % 2) s *= p;
    return s;
}

Int squarefree_part(const Rat& x) {
    if (x == 0) throw MathError("squarefree_part(0)");
    // num/den ~ num*den mod squares
    return squarefree_part(Int(x.get_num() * x.get_den()));
}

std::pair<Int, Int> fundamental_discriminant(const Int& D) {
    if (D == 0) throw MathError("fundamental_discriminant(0)");
    Int rem = ((D % 4) + 4) % 4;
    if (rem != 0 && rem != 1)
        throw MathError("fundamental_discriminant: D = " + D.get_str() + " is not 0 or 1 mod 4");
    Int s = squarefree_part(D);
    Int D0 = (((s % 4) + 4) % 4 == 1) ? s : Int(4 * s);
    Int f2 = D / D0;
    Int f;
    if (mpz_perfect_square_p(f2.get_mpz_t()) == 0)
        throw MathError("fundamental_discriminant: internal square extraction failed");
    mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
    return {D0, f};
}

Int fundamental_discriminant_of_class(const Rat& x) {
    Int s = squarefree_part(x);
    return (((s % 4) + 4) % 4 == 1) ? s : Int(4 * s);
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e > 0) {
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw MathError("pow_rat: negative power of zero");
    return Rat(1) / pow_rat(base, -e);
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int double_factorial(long n) {
    if (n <= 0) return Int(1);
    Int r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::string to_string(const Rat& x) {
    return x.get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw MathError("parse_rat: empty string");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || sgn(Rat(q.get_den())) == 0)
        throw MathError("parse_rat: bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::string HalfInt::str() const {
    if (two % 2 == 0) return Int(two / 2).get_str();
    return Int(two).get_str() + "/2";
}

HalfInt parse_weight(const std::string& s) {
    Rat q = parse_rat(s);
    Rat doubled = q * 2;
    if (!is_integer(doubled))
        throw MathError("weight must be an integer or half-integer 'a/2', got '" + s + "'");
    Int t(doubled);
    if (!t.fits_sint_p()) throw MathError("weight out of range");
    return HalfInt(static_cast<int>(t.get_si()));
}

}  // namespace vvmf
