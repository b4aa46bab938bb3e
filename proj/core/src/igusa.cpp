#include "vvmf/igusa.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace vvmf {

namespace {

constexpr long kInf = LONG_MAX / 4;

long val_or_inf(const Rat& x, const Int& p) { return x == 0 ? kInf : valuation(x, p); }

// Legendre symbol of a p-adic unit given as a rational.
int rat_symbol(const Rat& u, const Int& p) {
    Int rep = u.get_num() * u.get_den();
    return kronecker(rep, p);
}

// odd unit residue mod 8 of a 2-adic unit rational (num, den both odd)
int unit_mod8(const Rat& u) {
    Int rep = (u.get_num() * u.get_den()) % 8;
    long r = rep.get_si();
    return static_cast<int>(((r % 8) + 8) % 8);
}

// histogram of a x^2 + b y^2 + c z^2 style integer forms mod m
template <typename G>
std::vector<long> hist_mod(long m, G&& g) {
    std::vector<long> h(static_cast<size_t>(m), 0);
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y)
            for (long z = 0; z < m; ++z) {
                long v = g(x, y, z) % m;
                if (v < 0) v += m;
                ++h[static_cast<size_t>(v)];
            }
    return h;
}

// <a,b,c> (three odd square forms) reduced to one square plus a plane.
// Returns (d, is_ell).  Verified against value histograms mod 16 and 32;
// memoized over the 64 possible triples mod 8.
std::pair<int, bool> reduce_square_triple(int a, int b, int c) {
    static std::map<std::array<int, 3>, std::pair<int, bool>> cache;
    static std::mutex mtx;
    std::array<int, 3> key{a, b, c};
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    long abc = static_cast<long>(a) * b * c;
    int dh = static_cast<int>((((-abc) % 8) + 8) % 8);
    int de = static_cast<int>((((3 * abc) % 8) + 8) % 8);
    auto orig = [&](long x, long y, long z) { return a * x * x + b * y * y + c * z * z; };
    auto cand_h = [&](long x, long y, long z) { return dh * x * x + 2 * y * z; };
    auto cand_e = [&](long x, long y, long z) {
        return de * x * x + 2 * (y * y + y * z + z * z);
    };
    bool h_ok = true, e_ok = true;
    for (long m : {16L, 32L}) {
        auto ho = hist_mod(m, orig);
        if (h_ok && ho != hist_mod(m, cand_h)) h_ok = false;
        if (e_ok && ho != hist_mod(m, cand_e)) e_ok = false;
        if (h_ok != e_ok) break;
    }
    if (!h_ok && !e_ok)
        throw MathError("reduce_square_triple: no isospectral replacement found");
    std::pair<int, bool> res = h_ok ? std::make_pair(dh, false) : std::make_pair(de, true);
    std::lock_guard lock(mtx);
    cache[key] = res;
    return res;
}

}  // namespace

UnimodBlock2 UnimodBlock2::merged(const UnimodBlock2& o) const {
    UnimodBlock2 m = *this;
    m.n_hyp += o.n_hyp;
    m.n_ell += o.n_ell;
    m.sq.insert(m.sq.end(), o.sq.begin(), o.sq.end());
    m.normalize();
    return m;
}

void UnimodBlock2::normalize() {
    n_hyp += 2 * (n_ell / 2);
    n_ell %= 2;
    std::sort(sq.begin(), sq.end());
    while (sq.size() > 2) {
        auto [d, is_ell] = reduce_square_triple(sq[0], sq[1], sq[2]);
        sq.erase(sq.begin(), sq.begin() + 3);
        sq.push_back(d);
        if (is_ell)
            ++n_ell;
        else
            ++n_hyp;
        n_hyp += 2 * (n_ell / 2);
        n_ell %= 2;
        std::sort(sq.begin(), sq.end());
    }
}

long NormalFormAtP::max_scale() const {
    long m = -1;
    for (const auto& [w, blk] : odd_blocks) m = std::max(m, w);
    for (const auto& [w, blk] : two_blocks) m = std::max(m, w);
    return m;
}

std::string NormalFormAtP::canonical_key() const {
    std::ostringstream os;
    os << p.get_str() << '|';
    for (const auto& [w, blk] : odd_blocks)
        os << w << ':' << blk.first << ':' << blk.second.get_str() << ';';
    os << '|';
    for (const auto& [w, blk] : two_blocks) {
        os << w << ':' << blk.n_hyp << ':' << blk.n_ell << ':';
        for (int s : blk.sq) os << s << ',';
        os << ';';
    }
    os << '|';
    if (linear_val)
        os << *linear_val;
    else
        os << '-';
    os << '|' << c.get_str() << '|' << t_shift;
    return os.str();
}

namespace {

QuadPoly drop_vars(const QuadPoly& f, const std::vector<int>& rm) {
    std::vector<int> keep;
    for (int i = 0; i < f.n; ++i)
        if (std::find(rm.begin(), rm.end(), i) == rm.end()) keep.push_back(i);
    QuadPoly g(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i) {
        g.b[i] = f.b[static_cast<size_t>(keep[i])];
        for (size_t j = 0; j < keep.size(); ++j)
            g.a(static_cast<int>(i), static_cast<int>(j)) = f.a(keep[i], keep[j]);
    }
    g.c = f.c;
    return g;
}

}  // namespace

NormalFormAtP normal_form(const QuadPoly& f_in, const Int& p) {
    NormalFormAtP nf;
    nf.p = p;
    QuadPoly f = f_in;
    bool two = (p == 2);

    if (two) {
        bool half_integral = false;
        for (const auto& x : f.A)
            if (x != 0 && valuation(x, p) < 0) half_integral = true;
        if (half_integral) {
            for (auto& x : f.A) x *= 2;
            for (auto& x : f.b) x *= 2;
            f.c *= 2;
            nf.t_shift = 1;
        }
    }
    if (!f.is_p_integral(p))
        throw MathError("normal_form: polynomial is not p-integral at p = " + p.get_str());

    std::vector<long> linear_vals;

    auto record_odd = [&](long w, const Rat& unit) {
        auto& blk = nf.odd_blocks[w];
        if (blk.first == 0) blk.second = Rat(1);
        blk.first += 1;
        blk.second *= unit;
    };

    while (f.n > 0) {
        long minA = kInf;
        for (int i = 0; i < f.n; ++i)
            for (int j = i; j < f.n; ++j) minA = std::min(minA, val_or_inf(f.a(i, j), p));
        long beta = kInf;
        for (int i = 0; i < f.n; ++i) beta = std::min(beta, val_or_inf(f.b[static_cast<size_t>(i)], p));

        if (minA >= kInf) {
            // no quadratic part left
            if (beta < kInf) linear_vals.push_back(beta);
            break;
        }

        // Rule A: a linear coefficient dominates every quadratic monomial;
        // the whole polynomial is isospectral to p^beta x + c.
        bool ruleA = false;
        if (beta < minA) {
            ruleA = true;
        } else if (two && beta == minA) {
            for (int i = 0; i < f.n && !ruleA; ++i)
                if (val_or_inf(f.b[static_cast<size_t>(i)], p) == beta &&
                    val_or_inf(f.a(i, i), p) > beta)
                    ruleA = true;
        }
        if (ruleA) {
            linear_vals.push_back(beta);
            break;
        }

        // choose a pivot at the minimal scale
        int pd = -1;
        for (int i = 0; i < f.n; ++i)
            if (val_or_inf(f.a(i, i), p) == minA) {
                pd = i;
                break;
            }

        if (pd < 0 && !two) {
            // odd p: move an off-diagonal minimum onto the diagonal
            int oi = -1, oj = -1;
            for (int i = 0; i < f.n && oi < 0; ++i)
                for (int j = i + 1; j < f.n; ++j)
                    if (val_or_inf(f.a(i, j), p) == minA) {
                        oi = i;
                        oj = j;
                        break;
                    }
            // substitute x_oj -> x_oj + x_oi
            for (int k = 0; k < f.n; ++k) f.a(oi, k) += f.a(oj, k);
            for (int k = 0; k < f.n; ++k) f.a(k, oi) += f.a(k, oj);
            f.b[static_cast<size_t>(oi)] += f.b[static_cast<size_t>(oj)];
            pd = oi;
        }

        if (pd >= 0) {
            // one-dimensional split at scale w
            long w = valuation(f.a(pd, pd), p);
            Rat piv = f.a(pd, pd);
            std::vector<Rat> fk(static_cast<size_t>(f.n), Rat(0));
            for (int k = 0; k < f.n; ++k)
                if (k != pd && f.a(pd, k) != 0) fk[static_cast<size_t>(k)] = f.a(pd, k) / piv;
            for (int k = 0; k < f.n; ++k) {
                if (k == pd || fk[static_cast<size_t>(k)] == 0) continue;
                for (int l = 0; l < f.n; ++l)
                    if (l != pd) f.a(k, l) -= fk[static_cast<size_t>(k)] * f.a(pd, l);
                f.b[static_cast<size_t>(k)] -= fk[static_cast<size_t>(k)] * f.b[static_cast<size_t>(pd)];
            }
            Rat bi = f.b[static_cast<size_t>(pd)];
            long bv = val_or_inf(bi, p);
            Rat unit = piv / Rat(pow_int(p, static_cast<unsigned long>(w)));
            bool can_absorb = (bi == 0) || (two ? bv >= w + 1 : bv >= w);
            if (can_absorb) {
                if (bi != 0) f.c -= bi * bi / (4 * piv);
                if (two)
                    nf.two_blocks[w].sq.push_back(unit_mod8(unit));
                else
                    record_odd(w, unit);
            } else {
                // p = 2, v(b) = w: a x^2 + b x at one scale is isospectral to
                // a linear variable of valuation w + 1
                linear_vals.push_back(w + 1);
            }
            f = drop_vars(f, {pd});
            continue;
        }

        // p = 2, off-diagonal minimum: split a 2x2 even block
        int oi = -1, oj = -1;
        for (int i = 0; i < f.n && oi < 0; ++i)
            for (int j = i + 1; j < f.n; ++j)
                if (val_or_inf(f.a(i, j), p) == minA) {
                    oi = i;
                    oj = j;
                    break;
                }
        long w = minA;
        Rat B11 = f.a(oi, oi), B12 = f.a(oi, oj), B22 = f.a(oj, oj);
        Rat det = B11 * B22 - B12 * B12;
        // eliminate couplings of the block with the other variables
        for (int k = 0; k < f.n; ++k) {
            if (k == oi || k == oj) continue;
            Rat r1 = f.a(oi, k), r2 = f.a(oj, k);
            if (r1 == 0 && r2 == 0) continue;
            // (s1, s2) = B^{-1} (r1, r2)
            Rat s1 = (B22 * r1 - B12 * r2) / det;
            Rat s2 = (B11 * r2 - B12 * r1) / det;
            for (int l = 0; l < f.n; ++l) {
                if (l == oi || l == oj) continue;
                f.a(k, l) -= s1 * f.a(oi, l) + s2 * f.a(oj, l);
            }
            f.b[static_cast<size_t>(k)] -=
                s1 * f.b[static_cast<size_t>(oi)] + s2 * f.b[static_cast<size_t>(oj)];
        }
        Rat b1 = f.b[static_cast<size_t>(oi)], b2 = f.b[static_cast<size_t>(oj)];
        long bv = std::min(val_or_inf(b1, p), val_or_inf(b2, p));
        if (bv >= w + 1) {
            if (b1 != 0 || b2 != 0) {
                // c -= b^T B^{-1} b / 4
                Rat q = (B22 * b1 * b1 - 2 * B12 * b1 * b2 + B11 * b2 * b2) / det;
                f.c -= q / 4;
            }
            Rat detu = det / Rat(pow_int(p, static_cast<unsigned long>(2 * w)));
            int d8 = unit_mod8(detu);
            auto& blk = nf.two_blocks[w];
            if (d8 == 7)
                blk.n_hyp += 1;
            else if (d8 == 3)
                blk.n_ell += 1;
            else
                throw MathError("normal_form: even 2x2 block with det unit " + std::to_string(d8) +
                                " mod 8");
        } else {
            linear_vals.push_back(bv);
        }
        f = drop_vars(f, {oi, oj});
    }

    for (auto& [w, blk] : nf.two_blocks) blk.normalize();
    if (!linear_vals.empty())
        nf.linear_val = *std::min_element(linear_vals.begin(), linear_vals.end());
    nf.c = f.c;
    return nf;
}

// ---------------------------------------------------------------------------
// zeta functions

namespace {

RatFun one_over(const Poly& den) { return RatFun(Poly(Rat(1)), den); }

// (p-1)/(p - t)
RatFun geom_factor(const Int& p) {
    Poly den;
    den.c = {Rat(p), Rat(-1)};
    return RatFun(Poly(Rat(p - 1)), den);
}

Rat inv_pow(const Int& p, long k) {
    // p^{-k}
    if (k >= 0) return make_rat(1, pow_int(p, static_cast<unsigned long>(k)));
    return Rat(pow_int(p, static_cast<unsigned long>(-k)));
}

// helper functions I_a(r, d) of the odd-prime evaluation
RatFun I_odd(const Int& p, bool p_divides_a, const Rat& a, long r, const Rat& d) {
    RatFun G = geom_factor(p);
    Poly t = Poly::monomial(Rat(1), 1);
    if (r % 2 != 0) {
        if (p_divides_a) {
            // (1 - p^{-s-r}) (p-1)/(p-p^{-s})
            Poly f;
            f.c = {Rat(1), -inv_pow(p, r)};
            return RatFun(f, Poly(Rat(1))) * G;
        }
        int chi = rat_symbol(a * d * Rat((r + 1) / 2 % 2 ? -1 : 1), p);
        Poly f;
        f.c = {Rat(1), Rat(chi) * inv_pow(p, (r + 1) / 2)};
        return RatFun(f, Poly(Rat(1))) * G -
               RatFun(Rat(inv_pow(p, r)) + Rat(chi) * inv_pow(p, (r + 1) / 2));
    }
    int chi = rat_symbol(d * Rat(r / 2 % 2 ? -1 : 1), p);
    Rat u = Rat(chi) * inv_pow(p, r / 2);
    if (p_divides_a) {
        Poly f;
        f.c = {Rat(1), u};
        return (RatFun(f, Poly(Rat(1))) * G) * Rat(Rat(1) - u);
    }
    return (G + RatFun(u)) * Rat(Rat(1) - u);
}

struct OddCum {
    const std::map<long, std::pair<int, Rat>>& blocks;
    long rank_cum(long j) const {
        long r = 0;
        for (const auto& [w, blk] : blocks)
            if (w <= j && (j - w) % 2 == 0) r += blk.first;
        return r;
    }
    Rat disc_cum(long j) const {
        Rat d(1);
        for (const auto& [w, blk] : blocks)
            if (w <= j && (j - w) % 2 == 0) d *= blk.second;
        return d;
    }
    // p_(j) = p^{sum_{0 <= i < j} r_(i)}
    Rat p_factor(const Int& p, long j) const {
        long e = 0;
        for (long i = 0; i < j; ++i) e += rank_cum(i);
        return inv_pow(p, e);  // 1 / p_(j)
    }
};

}  // namespace

RatFun igusa_zeta_odd(const NormalFormAtP& nf) {
    const Int& p = nf.p;
    if (p == 2) throw MathError("igusa_zeta_odd: called at p = 2");
    OddCum cum{nf.odd_blocks};
    RatFun zeta;

    bool has_lin = nf.linear_val.has_value();
    long cval = (nf.c == 0) ? kInf : valuation(nf.c, p);
    if (nf.odd_blocks.empty() && !has_lin && nf.c == 0) return RatFun();  // f identically 0

    auto I0_at = [&](long nu) {
        return I_odd(p, true, Rat(0), cum.rank_cum(nu), cum.disc_cum(nu));
    };

    if (has_lin && cval >= *nf.linear_val) {
        long lam = *nf.linear_val;
        for (long nu = 0; nu < lam; ++nu)
            zeta = zeta + RatFun::monomial(cum.p_factor(p, nu), static_cast<int>(nu)) * I0_at(nu);
        zeta = zeta + RatFun::monomial(cum.p_factor(p, lam), static_cast<int>(lam)) * geom_factor(p);
        return zeta;
    }
    if (nf.c != 0) {
        long kappa = cval;
        for (long nu = 0; nu <= kappa; ++nu) {
            Rat a = nf.c * inv_pow(p, nu);
            bool pdiv = valuation(a, p) >= 1;
            zeta = zeta + RatFun::monomial(cum.p_factor(p, nu), static_cast<int>(nu)) *
                              I_odd(p, pdiv, a, cum.rank_cum(nu), cum.disc_cum(nu));
        }
        zeta = zeta + RatFun::monomial(cum.p_factor(p, kappa + 1), static_cast<int>(kappa));
        return zeta;
    }
    // homogeneous case (i)
    long omega = std::max(nf.max_scale(), 1L);
    long rtot = 0;
    for (const auto& [w, blk] : nf.odd_blocks) rtot += blk.first;
    Poly tail_den;
    tail_den.c = {Rat(1), Rat(0), -inv_pow(p, rtot)};
    RatFun tail_inv = one_over(tail_den);  // 1/(1 - t^2 p^{-r})
    for (long nu = 0; nu <= omega; ++nu) {
        RatFun term = RatFun::monomial(cum.p_factor(p, nu), static_cast<int>(nu)) * I0_at(nu);
        if (nu >= omega - 1) term = term * tail_inv;
        zeta = zeta + term;
    }
    return zeta;
}

// ---------------------------------------------------------------------------
// p = 2

namespace {

// Ig(a, b, nu) with b possibly infinite.  The exponent in the volume branch
// is min(b, nu): the set a + 2^b Z_2 + 2^nu Z_2 is a + 2^{min(b,nu)} Z_2.
RatFun Ig2(const Rat& a, long b, long nu) {
    long mu = std::min(b, nu);
    long va = (a == 0) ? kInf : valuation(a, Int(2));
    Poly den;
    den.c = {Rat(2), Rat(-1)};
    if (va >= mu) return RatFun(Poly::monomial(Rat(1), static_cast<int>(mu)), den);
    return RatFun::monomial(Rat(1), static_cast<int>(va));
}

Rat two_pow(long k) { return inv_pow(Int(2), -k); }  // 2^k

// H_1, H_2, H_3 of Prop. 36 for a unimodular block Q
RatFun H1(const Rat& a, long b, const UnimodBlock2& Q) {
    long r = Q.rank();
    if (Q.sq.empty()) return Ig2(a, b, 1) * Rat(1 - two_pow(-r));
    return Ig2(a, b, 0) - Ig2(a, b, 1) * two_pow(-r);
}

RatFun H2(const Rat& a, long b, const UnimodBlock2& Q) {
    long r = Q.rank();
    Rat eps(Q.eps());
    if (Q.sq.empty()) {
        Rat u = eps * two_pow(-r / 2);
        return (Ig2(a, b, 1) + Ig2(a, b, 2) * u) * Rat(1 - u);
    }
    if (Q.sq.size() == 1) {
        Rat c(Q.sq[0]);
        return Ig2(a, b, 0) * Rat(1 - eps * two_pow(-(r - 1) / 2)) - Ig2(a, b, 2) * two_pow(-r) +
               (Ig2(a, b, 2) + Ig2(a + c, b, 2)) * Rat(eps * two_pow(-(r + 1) / 2));
    }
    Rat c(Q.sq[0]);
    if ((Q.sq[0] + Q.sq[1]) % 4 == 0) {
        return Ig2(a, b, 0) - Ig2(a, b, 1) * Rat(eps * two_pow(-r / 2)) +
               Ig2(a, b, 2) * Rat(eps * two_pow(-r / 2) - two_pow(-r));
    }
    return Ig2(a, b, 0) * Rat(1 - eps * two_pow(-(r - 2) / 2)) +
           (Ig2(a, b, 1) + Ig2(a + c, b, 2)) * Rat(eps * two_pow(-r / 2)) -
           Ig2(a, b, 2) * two_pow(-r);
}

RatFun H3(const Rat& a, long b, const UnimodBlock2& Q) {
    long r = Q.rank();
    if (Q.sq.empty()) return RatFun();
    if (Q.sq.size() == 1) {
        Rat c(Q.sq[0]);
        return (Ig2(a + c, b, 3) - Ig2(a + c, b, 2)) * two_pow(-r);
    }
    Rat c(Q.sq[0]), d(Q.sq[1]);
    if ((Q.sq[0] + Q.sq[1]) % 4 == 0) {
        int sg = ((Q.sq[0] + Q.sq[1]) % 8 == 0) ? 1 : -1;  // (-1)^{(c+d)/4}
        return (Ig2(a, b, 3) - Ig2(a, b, 2)) * Rat(sg * two_pow(-r));
    }
    return Ig2(a, b, 1) * Rat(-two_pow(1 - r)) +
           (Ig2(a, b, 2) + Ig2(a + c + d, b, 3)) * two_pow(-r);
}

// I_a^b(Q0, Q1, Q2) of Prop. 36
RatFun I_two(const Rat& a, long b, const UnimodBlock2& Q0, const UnimodBlock2& Q1,
             const UnimodBlock2& Q2) {
    size_t s1 = Q1.sq.size(), s2 = Q2.sq.size();
    long r1 = Q1.rank();
    Rat e1(Q1.eps());
    if (s1 >= 1 && s2 >= 1) return H1(a, b, Q0);
    if (s1 == 0 && s2 >= 1) return H2(a, b, Q0);
    if (s1 == 0 && s2 == 0) return H2(a, b, Q0) + H3(a, b, Q0) * Rat(e1 * two_pow(-r1 / 2));
    if (s1 == 1) {
        Rat c(Q1.sq[0]);
        return H1(a, b, Q0) +
               (H3(a, b, Q0) + H3(a + 2 * c, b, Q0)) * Rat(e1 * two_pow(-(r1 + 1) / 2));
    }
    // s1 == 2, s2 == 0
    if ((Q1.sq[0] + Q1.sq[1]) % 4 == 0)
        return H1(a, b, Q0) + H3(a, b, Q0) * Rat(e1 * two_pow(-r1 / 2));
    return H1(a, b, Q0) + H3(a + Rat(Q1.sq[0]), b, Q0) * Rat(e1 * two_pow(-r1 / 2));
}

struct TwoCum {
    const std::map<long, UnimodBlock2>& blocks;
    UnimodBlock2 cum(long j) const {
        UnimodBlock2 m;
        if (j < 0) return m;
        for (const auto& [w, blk] : blocks)
            if (w <= j && (j - w) % 2 == 0) m = m.merged(blk);
        return m;
    }
    UnimodBlock2 single(long j) const {
        auto it = blocks.find(j);
        return it == blocks.end() ? UnimodBlock2{} : it->second;
    }
    Rat p_factor(long j) const {
        long e = 0;
        for (long i = 0; i < j; ++i) e += cum(i).rank();
        return two_pow(-e);  // 1 / p_(j)
    }
};

}  // namespace

RatFun igusa_zeta_two(const NormalFormAtP& nf) {
    if (nf.p != 2) throw MathError("igusa_zeta_two: prime is not 2");
    TwoCum cum{nf.two_blocks};
    bool has_lin = nf.linear_val.has_value();
    long cval = (nf.c == 0) ? kInf : valuation(nf.c, Int(2));

    if (nf.two_blocks.empty() && !has_lin && nf.c == 0) return RatFun();

    auto term_I = [&](const Rat& a, long b, long nu) {
        return RatFun::monomial(cum.p_factor(nu), static_cast<int>(nu)) *
               I_two(a, b, cum.cum(nu), cum.cum(nu + 1), cum.single(nu + 2));
    };
    Poly gden;
    gden.c = {Rat(2), Rat(-1)};

    RatFun result;
    if (!has_lin && nf.c == 0) {
        long omega = std::max(nf.max_scale(), 1L);
        long rtot = 0;
        for (const auto& [w, blk] : nf.two_blocks) rtot += blk.rank();
        Poly tail_den;
        tail_den.c = {Rat(1), Rat(0), -two_pow(-rtot)};
        RatFun tail_inv = one_over(tail_den);
        for (long nu = 0; nu <= omega; ++nu) {
            RatFun term = term_I(Rat(0), kInf, nu);
            if (nu >= omega - 1) term = term * tail_inv;
            result = result + term;
        }
    } else if (has_lin && *nf.linear_val <= cval) {
        long lam = *nf.linear_val;
        for (long nu = 0; nu < lam; ++nu) {
            long b = (nu >= lam - 2) ? (lam - nu) : kInf;
            result = result + term_I(Rat(0), b, nu);
        }
        result = result + RatFun(Poly::monomial(cum.p_factor(lam), static_cast<int>(lam)), gden);
    } else if (has_lin && *nf.linear_val <= cval + 2) {
        long lam = *nf.linear_val, kappa = cval;
        for (long nu = 0; nu <= kappa; ++nu) {
            long b = (nu >= lam - 2) ? (lam - nu) : kInf;
            result = result + term_I(nf.c * inv_pow(Int(2), nu), b, nu);
        }
        result = result + RatFun::monomial(cum.p_factor(kappa + 1), static_cast<int>(kappa));
    } else {
        long kappa = cval;
        for (long nu = 0; nu <= kappa; ++nu)
            result = result + term_I(nf.c * inv_pow(Int(2), nu), kInf, nu);
        result = result + RatFun::monomial(cum.p_factor(kappa + 1), static_cast<int>(kappa));
    }

    if (nf.t_shift > 0) {
        // replacing f by 2f multiplied zeta by t; divide it back out
        result = result / RatFun::monomial(Rat(1), nf.t_shift);
    }
    return result;
}

RatFun igusa_zeta(const NormalFormAtP& nf) {
    return nf.p == 2 ? igusa_zeta_two(nf) : igusa_zeta_odd(nf);
}

// ---------------------------------------------------------------------------
// local L-factors

namespace {

std::shared_mutex lp_cache_mutex;
std::map<std::string, RatFun> lp_cache;

RatFun lp_ratfun(const QuadPoly& f, const Int& p) {
    NormalFormAtP nf = normal_form(f, p);
    std::string key = nf.canonical_key();
    {
        std::shared_lock lock(lp_cache_mutex);
        auto it = lp_cache.find(key);
        if (it != lp_cache.end()) return it->second;
    }
    RatFun zeta = igusa_zeta(nf);
    Poly t = Poly::monomial(Rat(1), 1);
    RatFun tz = RatFun(t, Poly(Rat(1))) * zeta;
    Poly one_minus_t;
    one_minus_t.c = {Rat(1), Rat(-1)};
    RatFun L = (RatFun(Rat(1)) - tz) / RatFun(one_minus_t, Poly(Rat(1)));
    std::unique_lock lock(lp_cache_mutex);
    lp_cache.emplace(key, L);
    return L;
}

}  // namespace

Rat lp_value(const QuadPoly& f, const Int& p, long j) {
    RatFun L = lp_ratfun(f, p);
    Rat t = inv_pow(p, -j);
    return L.eval(t);
}

Rat lp_bracket(const QuadPoly& f, const Int& p, long j) {
    RatFun L = lp_ratfun(f, p);
    Poly fac;
    fac.c = {Rat(1), -make_rat(1, p)};
    RatFun B = RatFun(fac, Poly(Rat(1))) * L;
    Rat t = inv_pow(p, -j);
    return B.eval(t);
}

std::vector<Rat> solution_count_series(const QuadPoly& f, const Int& p, int count) {
    RatFun L = lp_ratfun(f, p);
    std::vector<Rat> ser = L.series(count);
    std::vector<Rat> out(ser.size());
    for (size_t nu = 0; nu < ser.size(); ++nu)
        out[nu] = ser[nu] * pow_rat(Rat(p), static_cast<long>(nu) * f.n);
    return out;
}

Rat kloosterman_sum(const Lattice& L, int beta, const Rat& m, int gamma, const Rat& n,
                    const Rat& r, const Int& c) {
    if (c <= 0) throw MathError("kloosterman_sum: c must be positive");
    QuadPoly f = jacobi_polynomial(L, beta, gamma, m, n, r);
    long e = L.rank();
    auto fac = factor(c);
    // all divisors with their Moebius complement
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, ex] : fac) {
        std::vector<Int> next;
        Int pk(1);
        for (int k = 0; k <= ex; ++k) {
            for (const auto& d : divs) next.push_back(d * pk);
            pk *= p;
        }
        divs = next;
    }
    auto mobius = [&](Int x) -> int {
        int mu = 1;
        for (const auto& [p, ex] : factor(x)) {
            (void)p;
            if (ex > 1) return 0;
            mu = -mu;
        }
        return mu;
    };
    auto count_N = [&](const Int& a) -> Int {
        if (a == 1) return Int(1);
        Int total(1);
        for (const auto& [p, ex] : factor(a)) total *= count_solutions(f, p, ex);
        return total;
    };
    Rat acc(0);
    for (const auto& a : divs) {
        Int comp = c / a;
        int mu = (comp == 1) ? 1 : mobius(comp);
        if (mu == 0) continue;
        acc += Rat(mu) * Rat(count_N(a)) / pow_rat(Rat(a), e);
    }
    return pow_rat(Rat(c), e + 1) * acc;
}

}  // namespace vvmf
