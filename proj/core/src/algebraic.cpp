#include "vvmf/algebraic.hpp"

#include <cmath>

namespace vvmf {

AlgebraicScalar::AlgebraicScalar(Rat c, int pih, Int rad)
    : coeff(std::move(c)), pi_halves(pih), radicand(std::move(rad)) {
    if (radicand <= 0) throw MathError("AlgebraicScalar: radicand must be positive");
    normalize();
}

void AlgebraicScalar::normalize() {
    if (coeff == 0) {
        pi_halves = 0;
        radicand = 1;
        return;
    }
    if (radicand == 1) return;
    Int s = squarefree_part(radicand);
    if (s != radicand) {
        Int f2 = radicand / s, f;
        mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
        coeff *= f;
        radicand = s;
    }
}

AlgebraicScalar AlgebraicScalar::sqrt_of(const Rat& x) {
    if (x <= 0) throw MathError("sqrt_of: argument must be positive");
    // sqrt(p/q) = sqrt(p*q)/q
    Int pq = x.get_num() * x.get_den();
    return AlgebraicScalar(make_rat(1, x.get_den()), 0, pq);
}

AlgebraicScalar AlgebraicScalar::pow_half(const Rat& x, long j) {
    if (x <= 0) throw MathError("pow_half: base must be positive");
    long fl = (j >= 0) ? j / 2 : -((-j + 1) / 2);  // floor(j/2)
    AlgebraicScalar r(pow_rat(x, fl));
    if (j % 2 != 0) r = r * sqrt_of(x);
    return r;
}

AlgebraicScalar AlgebraicScalar::operator*(const AlgebraicScalar& o) const {
    if (coeff == 0 || o.coeff == 0) return AlgebraicScalar();
    return AlgebraicScalar(coeff * o.coeff, pi_halves + o.pi_halves, radicand * o.radicand);
}

AlgebraicScalar AlgebraicScalar::inverse() const {
    if (coeff == 0) throw MathError("AlgebraicScalar: division by zero");
    // 1/sqrt(r) = sqrt(r)/r
    return AlgebraicScalar(Rat(1) / (coeff * radicand), -pi_halves, radicand);
}

AlgebraicScalar AlgebraicScalar::operator/(const AlgebraicScalar& o) const {
    return *this * o.inverse();
}

AlgebraicScalar AlgebraicScalar::operator*(const Rat& r) const {
    if (r == 0 || coeff == 0) return AlgebraicScalar();
    return AlgebraicScalar(coeff * r, pi_halves, radicand);
}

Rat AlgebraicScalar::to_rational() const {
    if (!is_rational())
        throw MathError("AlgebraicScalar: value is not rational (pi_halves=" +
                        std::to_string(pi_halves) + ", radicand=" + radicand.get_str() + ")");
    return coeff;
}

double AlgebraicScalar::approx() const {
    return coeff.get_d() * std::pow(M_PI, pi_halves / 2.0) * std::sqrt(radicand.get_d());
}

AlgebraicScalar gamma_half(int two_x) {
    if (two_x <= 0) throw MathError("gamma_half: argument must be positive");
    if (two_x % 2 == 0) {
        return AlgebraicScalar(Rat(factorial(static_cast<unsigned long>(two_x / 2 - 1))));
    }
    // Gamma(j + 1/2) = (2j)! / (4^j j!) * sqrt(pi)
    unsigned long j = static_cast<unsigned long>((two_x - 1) / 2);
    Rat c(factorial(2 * j), pow_int(Int(4), j) * factorial(j));
    c.canonicalize();
    return AlgebraicScalar(c, 1, Int(1));
}

}  // namespace vvmf
