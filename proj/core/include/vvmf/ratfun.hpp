#ifndef VVMF_RATFUN_HPP
#define VVMF_RATFUN_HPP

#include "vvmf/rational.hpp"

#include <vector>

namespace vvmf {

// Dense polynomial over Q in one formal variable t.
struct Poly {
    std::vector<Rat> c;  // c[i] is the coefficient of t^i; no trailing zeros

    Poly() = default;
    explicit Poly(Rat constant) {
        if (constant != 0) c.push_back(std::move(constant));
    }
    static Poly monomial(const Rat& a, int deg);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim();
    Rat eval(const Rat& t) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    bool operator==(const Poly& o) const { return c == o.c; }

    // Exact division; throws if the remainder is nonzero.
    Poly divide_exact(const Poly& d) const;
};

Poly gcd(Poly a, Poly b);  // monic gcd

// Quotient of polynomials, stored with common factors removed.
struct RatFun {
    Poly num, den;

    RatFun() : den(Poly(Rat(1))) {}
    explicit RatFun(Rat constant) : num(Poly(std::move(constant))), den(Poly(Rat(1))) {}
    RatFun(Poly n, Poly d);
    static RatFun monomial(const Rat& a, int deg) {
        return RatFun(Poly::monomial(a, deg), Poly(Rat(1)));
    }

    bool is_zero() const { return num.is_zero(); }
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator*(const Rat& s) const;
    bool operator==(const RatFun& o) const;

    // Exact evaluation after cancellation; throws PoleError at a true pole.
    Rat eval(const Rat& t) const;

    // Taylor coefficients at t = 0 (den(0) must be nonzero).
    std::vector<Rat> series(int count) const;

  private:
    void reduce();
};

}  // namespace vvmf

#endif
