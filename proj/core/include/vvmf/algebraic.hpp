#ifndef VVMF_ALGEBRAIC_HPP
#define VVMF_ALGEBRAIC_HPP

#include "vvmf/rational.hpp"

namespace vvmf {

// Exact number of the form  coeff * pi^(pi_halves/2) * sqrt(radicand)
// with radicand a squarefree positive integer.  This is the currency in
// which the global coefficient constants are assembled; a finished Fourier
// coefficient must come out with pi_halves = 0 and radicand = 1.
struct AlgebraicScalar {
    Rat coeff{0};
    int pi_halves = 0;
    Int radicand{1};

    AlgebraicScalar() = default;
    explicit AlgebraicScalar(Rat c) : coeff(std::move(c)) {}
    AlgebraicScalar(Rat c, int pih, Int rad);

    static AlgebraicScalar rational(const Rat& c) { return AlgebraicScalar(c); }
    // sqrt(x) for a positive rational x.
    static AlgebraicScalar sqrt_of(const Rat& x);
    // x^{j/2} for a positive rational x and an integer j (possibly negative).
    static AlgebraicScalar pow_half(const Rat& x, long j);
    // pi^{j/2}
    static AlgebraicScalar pi_half_pow(int j) { return AlgebraicScalar(Rat(1), j, Int(1)); }

    AlgebraicScalar operator*(const AlgebraicScalar& o) const;
    AlgebraicScalar operator/(const AlgebraicScalar& o) const;
    AlgebraicScalar operator*(const Rat& r) const;
    AlgebraicScalar inverse() const;

    bool is_zero() const { return coeff == 0; }
    bool is_rational() const { return coeff == 0 || (pi_halves == 0 && radicand == 1); }
    // Throws MathError unless the value is rational.
    Rat to_rational() const;

    double approx() const;

  private:
    void normalize();
};

// Gamma(x) at a positive integer or half-integer x = two_x/2, as an exact
// AlgebraicScalar (rational for integer x, rational multiple of sqrt(pi)
// otherwise).
AlgebraicScalar gamma_half(int two_x);

}  // namespace vvmf

#endif
