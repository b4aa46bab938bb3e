#ifndef VVMF_LATTICE_HPP
#define VVMF_LATTICE_HPP

#include "vvmf/rational.hpp"

#include <map>
#include <vector>

namespace vvmf {

using IMat = std::vector<std::vector<Int>>;

// U * S * V = diag(d), U and V unimodular, d_i >= 0 and d_i | d_{i+1}.
struct SmithResult {
    IMat U, V;
    std::vector<Int> d;
};
SmithResult smith_normal_form(const IMat& S);

// An even lattice given by its Gram matrix, together with its discriminant
// group Lambda'/Lambda.  Group elements are stored in a fixed canonical
// order: the Smith-form generators (1/d_i) * (i-th column of V) are swept in
// odometer order, coordinates reduced into [0,1)^e componentwise.  Index 0
// is the zero element.  Immutable after construction.
class Lattice {
  public:
    static Lattice from_gram(IMat gram);

    int rank() const { return e_; }
    const IMat& gram() const { return gram_; }
    const Int& det() const { return det_; }
    int b_plus() const { return b_plus_; }
    int b_minus() const { return b_minus_; }
    int signature_mod8() const { return ((b_plus_ - b_minus_) % 8 + 8) % 8; }

    const std::vector<Int>& invariant_factors() const { return invariant_factors_; }
    long group_order() const { return static_cast<long>(elements_.size()); }
    const std::vector<Rat>& coords(int idx) const { return elements_[idx]; }

    // q(gamma) mod 1, in [0,1).
    Rat q_value(int idx) const;
    // <gamma, delta> mod 1, in [0,1).
    Rat pairing(int i, int j) const;
    // Exact (not reduced) values on coordinate vectors.
    Rat q_raw(const std::vector<Rat>& x) const;
    Rat pairing_raw(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

    int zero_index() const { return 0; }
    int neg(int idx) const { return neg_[idx]; }
    int add(int i, int j) const;
    int smul(const Int& lambda, int idx) const;
    Int denominator(int idx) const;

    // Index lookup from arbitrary rational coordinates (reduced mod 1).
    // Throws MathError if the vector is not in the dual lattice.
    int index_of(const std::vector<Rat>& coords) const;

    // Representatives of the orbits {gamma, -gamma}, in canonical order.
    std::vector<int> orbit_reps() const;

    Lattice flipped() const;  // gram -> -gram (dual Weil representation swap)

    std::string element_str(int idx) const;

  private:
    Lattice() = default;

    IMat gram_;
    int e_ = 0;
    int b_plus_ = 0, b_minus_ = 0;
    Int det_{1};
    std::vector<Int> invariant_factors_;
    std::vector<std::vector<Rat>> elements_;
    std::map<std::vector<Rat>, int> index_;
    std::vector<int> neg_;
};

// Exact inertia of a symmetric rational matrix (number of positive and
// negative eigenvalues); requires the matrix to be nonsingular.
std::pair<int, int> exact_signature(const IMat& S);

}  // namespace vvmf

#endif
