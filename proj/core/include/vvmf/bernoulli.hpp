#ifndef VVMF_BERNOULLI_HPP
#define VVMF_BERNOULLI_HPP

#include "vvmf/algebraic.hpp"
#include "vvmf/rational.hpp"

namespace vvmf {

// Bernoulli number B_n with the B_1 = -1/2 convention.  Memoized; reads are
// concurrent, fills are serialized.
Rat bernoulli_number(unsigned long n);

// Bernoulli polynomial B_n(x).
Rat bernoulli_poly(unsigned long n, const Rat& x);

// Generalized Bernoulli number B_{n,chi} for the quadratic character of the
// fundamental discriminant D0:
//   B_{n,chi} = |D0|^{n-1} sum_{a=1..|D0|} chi(a) B_n(a/|D0|)
Rat generalized_bernoulli(unsigned long n, const Int& D0);

// Exact value of L_D(s0) = sum_{a>=1} (D/a) a^{-s0} at a positive integer s0,
// for a discriminant D (0 or 1 mod 4, nonzero).  Computed through the
// functional equation from L(1-s0, chi_{D0}) = -B_{s0,chi}/s0 and corrected
// by the Euler factors at primes dividing D but not D0.  Requires the parity
// match chi_{D0}(-1) = (-1)^{s0}; otherwise throws MathError.
AlgebraicScalar l_value_critical(const Int& D, unsigned long s0);

}  // namespace vvmf

#endif
