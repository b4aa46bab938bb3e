#include "vvmf/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace vvmf {

namespace {

IMat identity(int n) {
    IMat I(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

void swap_rows(IMat& A, int i, int j) { std::swap(A[i], A[j]); }
void swap_cols(IMat& A, int i, int j) {
    for (auto& row : A) std::swap(row[i], row[j]);
}
// row i += c * row j
void add_row(IMat& A, int i, int j, const Int& c) {
    for (size_t k = 0; k < A[i].size(); ++k) A[i][k] += c * A[j][k];
}
// col i += c * col j
void add_col(IMat& A, int i, int j, const Int& c) {
    for (auto& row : A) row[i] += c * row[j];
}
void negate_row(IMat& A, int i) {
    for (auto& x : A[i]) x = -x;
}

Rat det_rat(IMat S) {
    int n = static_cast<int>(S.size());
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = Rat(S[i][j]);
    Rat det(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (A[i][k] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            std::swap(A[piv], A[k]);
            det = -det;
        }
        det *= A[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (A[i][k] == 0) continue;
            Rat f = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j) A[i][j] -= f * A[k][j];
        }
    }
    return det;
}

}  // namespace

SmithResult smith_normal_form(const IMat& S_in) {
    IMat A = S_in;
    int n = static_cast<int>(A.size());
    SmithResult res{identity(n), identity(n), {}};
    IMat& U = res.U;
    IMat& V = res.V;

    for (int k = 0; k < n; ++k) {
        for (;;) {
            // find entry of minimal nonzero absolute value in the trailing block
            int pi = -1, pj = -1;
            Int best;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j)
                    if (A[i][j] != 0) {
                        Int a = abs(A[i][j]);
                        if (pi < 0 || a < best) {
                            best = a;
                            pi = i;
                            pj = j;
                        }
                    }
            if (pi < 0) break;  // trailing block is zero
            if (pi != k) {
                swap_rows(A, pi, k);
                swap_rows(U, pi, k);
            }
            if (pj != k) {
                swap_cols(A, pj, k);
                swap_cols(V, pj, k);
            }
            bool reduced = true;
            for (int i = k + 1; i < n; ++i)
                if (A[i][k] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), A[i][k].get_mpz_t(), A[k][k].get_mpz_t());
                    add_row(A, i, k, -q);
                    add_row(U, i, k, -q);
                    if (A[i][k] != 0) reduced = false;
                }
            for (int j = k + 1; j < n; ++j)
                if (A[k][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), A[k][j].get_mpz_t(), A[k][k].get_mpz_t());
                    add_col(A, j, k, -q);
                    add_col(V, j, k, -q);
                    if (A[k][j] != 0) reduced = false;
                }
            if (!reduced) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (int i = k + 1; i < n && divides; ++i)
                for (int j = k + 1; j < n && divides; ++j)
                    if (A[i][j] % A[k][k] != 0) {
                        add_row(A, k, i, Int(1));
                        add_row(U, k, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (A[k][k] < 0) {
            negate_row(A, k);
            negate_row(U, k);
        }
    }
    res.d.resize(n);
    for (int i = 0; i < n; ++i) res.d[i] = A[i][i];
    return res;
}

std::pair<int, int> exact_signature(const IMat& S) {
    int n = static_cast<int>(S.size());
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = Rat(S[i][j]);
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (A[k][k] == 0) {
            // pull a nonzero diagonal entry in, or build one from an
            // off-diagonal entry (x_k += x_j keeps symmetry)
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (A[i][i] != 0) {
                    piv = i;
                    break;
                }
            if (piv >= 0) {
                std::swap(A[piv], A[k]);
                for (int i = 0; i < n; ++i) std::swap(A[i][piv], A[i][k]);
            } else {
                int j = -1;
                for (int i = k + 1; i < n; ++i)
                    if (A[k][i] != 0) {
                        j = i;
                        break;
                    }
                if (j < 0) throw MathError("exact_signature: singular matrix");
                for (int i = 0; i < n; ++i) A[k][i] += A[j][i];
                for (int i = 0; i < n; ++i) A[i][k] += A[i][j];
            }
        }
        if (A[k][k] > 0)
            ++pos;
        else
            ++neg;
        for (int i = k + 1; i < n; ++i) {
            if (A[i][k] == 0) continue;
            Rat f = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            for (int j = k; j < n; ++j) A[j][i] -= f * A[j][k];
        }
    }
    return {pos, neg};
}

Lattice Lattice::from_gram(IMat gram) {
    int n = static_cast<int>(gram.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(gram[i].size()) != n)
            throw MathError("Lattice: Gram matrix is not square");
        if (gram[i][i] % 2 != 0)
            throw MathError("Lattice: odd diagonal entry at (" + std::to_string(i) + "," +
                            std::to_string(i) + ")");
        for (int j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i])
                throw MathError("Lattice: Gram matrix not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }

    Lattice L;
    L.gram_ = std::move(gram);
    L.e_ = n;
    if (n == 0) {
        L.det_ = 1;
        L.elements_.push_back({});
        L.index_[{}] = 0;
        L.neg_ = {0};
        return L;
    }

    Rat d = det_rat(L.gram_);
    if (d == 0) throw MathError("Lattice: singular Gram matrix");
    L.det_ = Int(d);

    auto [bp, bm] = exact_signature(L.gram_);
    L.b_plus_ = bp;
    L.b_minus_ = bm;

    SmithResult snf = smith_normal_form(L.gram_);
    // generators: g_i = (1/d_i) * (i-th column of V)
    std::vector<std::vector<Rat>> gens;
    std::vector<Int> facs;
    for (int i = 0; i < n; ++i) {
        if (snf.d[i] <= 1) continue;
        facs.push_back(snf.d[i]);
        std::vector<Rat> g(n);
        for (int r = 0; r < n; ++r) g[r] = make_rat(snf.V[r][i], snf.d[i]);
        gens.push_back(std::move(g));
    }
    L.invariant_factors_ = facs;

    // odometer sweep, first generator slowest
    std::vector<Int> a(facs.size(), 0);
    for (;;) {
        std::vector<Rat> x(n, Rat(0));
        for (size_t g = 0; g < gens.size(); ++g)
            for (int r = 0; r < n; ++r) x[r] += Rat(a[g]) * gens[g][r];
        for (auto& c : x) c = mod1(c);
        if (L.index_.emplace(x, static_cast<int>(L.elements_.size())).second)
            L.elements_.push_back(x);
        int pos = static_cast<int>(facs.size()) - 1;
        while (pos >= 0) {
            a[pos] += 1;
            if (a[pos] < facs[pos]) break;
            a[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (L.elements_.empty()) {
        L.elements_.push_back(std::vector<Rat>(n, Rat(0)));
        L.index_[L.elements_[0]] = 0;
    }

    Int order = abs(L.det_);
    if (Int(static_cast<long>(L.elements_.size())) != order)
        throw MathError("Lattice: discriminant group size mismatch (got " +
                        std::to_string(L.elements_.size()) + ", expected " + order.get_str() +
                        ")");

    L.neg_.resize(L.elements_.size());
    for (size_t i = 0; i < L.elements_.size(); ++i) {
        std::vector<Rat> m(n);
        for (int r = 0; r < n; ++r) m[r] = mod1(-L.elements_[i][r]);
        auto it = L.index_.find(m);
        if (it == L.index_.end()) throw MathError("Lattice: group not closed under negation");
        L.neg_[i] = it->second;
    }
    return L;
}

Rat Lattice::q_raw(const std::vector<Rat>& x) const {
    Rat acc(0);
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) acc += x[i] * Rat(gram_[i][j]) * x[j];
    return acc / 2;
}

Rat Lattice::pairing_raw(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    Rat acc(0);
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) acc += x[i] * Rat(gram_[i][j]) * y[j];
    return acc;
}

Rat Lattice::q_value(int idx) const { return mod1(q_raw(elements_[idx])); }

Rat Lattice::pairing(int i, int j) const { return mod1(pairing_raw(elements_[i], elements_[j])); }

int Lattice::add(int i, int j) const {
    std::vector<Rat> x(e_);
    for (int r = 0; r < e_; ++r) x[r] = mod1(elements_[i][r] + elements_[j][r]);
    auto it = index_.find(x);
    if (it == index_.end()) throw MathError("Lattice: group not closed under addition");
    return it->second;
}

int Lattice::smul(const Int& lambda, int idx) const {
    std::vector<Rat> x(e_);
    for (int r = 0; r < e_; ++r) x[r] = mod1(Rat(lambda) * elements_[idx][r]);
    auto it = index_.find(x);
    if (it == index_.end()) throw MathError("Lattice: group not closed under scaling");
    return it->second;
}

Int Lattice::denominator(int idx) const {
    Int d(1);
    for (const auto& c : elements_[idx]) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    return d;
}

int Lattice::index_of(const std::vector<Rat>& coords) const {
    if (static_cast<int>(coords.size()) != e_)
        throw MathError("Lattice: coordinate vector has wrong length");
    // membership: S * coords must be integral
    for (int i = 0; i < e_; ++i) {
        Rat acc(0);
        for (int j = 0; j < e_; ++j) acc += Rat(gram_[i][j]) * coords[j];
        if (!is_integer(acc))
            throw MathError("Lattice: vector is not in the dual lattice (row " +
                            std::to_string(i) + ")");
    }
    std::vector<Rat> x(e_);
    for (int r = 0; r < e_; ++r) x[r] = mod1(coords[r]);
    auto it = index_.find(x);
    if (it == index_.end()) throw MathError("Lattice: element lookup failed");
    return it->second;
}

std::vector<int> Lattice::orbit_reps() const {
    std::vector<int> reps;
    for (size_t i = 0; i < elements_.size(); ++i)
        if (static_cast<int>(i) <= neg_[i]) reps.push_back(static_cast<int>(i));
    return reps;
}

Lattice Lattice::flipped() const {
    IMat g = gram_;
    for (auto& row : g)
        for (auto& x : row) x = -x;
    return Lattice::from_gram(std::move(g));
}

std::string Lattice::element_str(int idx) const {
    std::ostringstream os;
    const auto& x = elements_[idx];
    if (x.empty()) return "0";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i].get_str();
    }
    return os.str();
}

}  // namespace vvmf
