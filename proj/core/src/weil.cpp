#include "vvmf/weil.hpp"

#include <cmath>

namespace vvmf {

namespace {

std::complex<double> cexp(const Rat& x) {
    double t = 2.0 * M_PI * x.get_d();
    return {std::cos(t), std::sin(t)};
}

std::complex<double> cexp(double x) {
    double t = 2.0 * M_PI * x;
    return {std::cos(t), std::sin(t)};
}

// sqrt(i)^k with sqrt(i) = e(1/8)
std::complex<double> sqrt_i_pow(long k) { return cexp(((k % 16) + 16) % 16 / 16.0); }

}  // namespace

RepMatrix RepMatrix::operator*(const RepMatrix& o) const {
    RepMatrix r(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            auto v = at(i, k);
            if (v == std::complex<double>(0.0, 0.0)) continue;
            for (int j = 0; j < dim; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

RepMatrix RepMatrix::adjoint() const {
    RepMatrix r(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

double RepMatrix::max_abs_diff(const RepMatrix& o) const {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
    return m;
}

double RepMatrix::unitarity_defect() const {
    RepMatrix p = *this * adjoint();
    double m = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m = std::max(m, std::abs(p.at(i, j) - (i == j ? 1.0 : 0.0)));
    return m;
}

bool RepMatrix::equal_up_to_phase(const RepMatrix& o, double tol,
                                  std::complex<double>* phase) const {
    // find the entry of largest modulus to fix the phase
    size_t best = 0;
    double bm = -1;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i]) > bm) {
            bm = std::abs(a[i]);
            best = i;
        }
    if (bm < tol) return o.max_abs_diff(*this) < tol;
    if (std::abs(o.a[best]) < tol) return false;
    std::complex<double> ph = a[best] / o.a[best];
    if (std::abs(std::abs(ph) - 1.0) > 1e-6) return false;
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - ph * o.a[i]));
    if (phase) *phase = ph;
    return m < tol;
}

RepMatrix rho_T(const Lattice& L) {
    int n = static_cast<int>(L.group_order());
    RepMatrix r(n);
    for (int g = 0; g < n; ++g) r.at(g, g) = cexp(L.q_value(g));
    return r;
}

RepMatrix rho_S(const Lattice& L) {
    int n = static_cast<int>(L.group_order());
    RepMatrix r(n);
    std::complex<double> pref =
        cexp(Rat(L.b_minus() - L.b_plus(), 8)) / std::sqrt(static_cast<double>(n));
    // rho(S) e_gamma = pref * sum_beta e(-<gamma,beta>) e_beta;
    // column gamma, row beta
    for (int g = 0; g < n; ++g)
        for (int b = 0; b < n; ++b) r.at(b, g) = pref * cexp(mod1(-L.pairing(g, b)));
    return r;
}

RepMatrix rho_Z(const Lattice& L) {
    int n = static_cast<int>(L.group_order());
    RepMatrix r(n);
    std::complex<double> i_pow = sqrt_i_pow(2L * (L.b_minus() - L.b_plus()));
    for (int g = 0; g < n; ++g) r.at(L.neg(g), g) = i_pow;
    return r;
}

RepMatrix rho_matrix(const Lattice& L, const Mat2& M, int branch) {
    long a = M[0], b = M[1], c = M[2], d = M[3];
    if (a * d - b * c != 1) throw MathError("rho_matrix: matrix not in SL2(Z)");
    int n = static_cast<int>(L.group_order());
    long sig = L.b_minus() - L.b_plus();
    RepMatrix r(n);
    if (c == 0) {
        // rho(M)_{beta,gamma} = sqrt(i)^{sig (1 - sgn d)} delta_{beta, a gamma} e(a b q(beta))
        std::complex<double> pref = sqrt_i_pow(sig * (1 - (d > 0 ? 1 : -1)));
        for (int g = 0; g < n; ++g) {
            int bg = L.smul(Int(a), g);
            r.at(bg, g) = pref * cexp(mod1(Rat(a) * Rat(b) * L.q_value(bg)));
        }
    } else {
        int e = L.rank();
        std::complex<double> pref = sqrt_i_pow(sig * (c > 0 ? 1 : -1)) /
                                    (std::pow(std::abs(static_cast<double>(c)), e / 2.0) *
                                     std::sqrt(static_cast<double>(n)));
        long cc = std::labs(c);
        // v sweeps Lambda / c Lambda
        std::vector<long> v(static_cast<size_t>(e), 0);
        bool done = (e == 0);
        std::vector<std::vector<Rat>> vr;
        for (;;) {
            std::vector<Rat> x(e);
            for (int i = 0; i < e; ++i) x[i] = Rat(v[i]);
            vr.push_back(x);
            if (e == 0) break;
            int pos = e - 1;
            while (pos >= 0) {
                if (++v[pos] < cc) break;
                v[pos] = 0;
                --pos;
            }
            if (pos < 0) {
                done = true;
                break;
            }
        }
        (void)done;
        for (int g = 0; g < n; ++g) {
            Rat qg = L.q_raw(L.coords(g));
            for (int bidx = 0; bidx < n; ++bidx) {
                const auto& beta = L.coords(bidx);
                std::complex<double> acc(0, 0);
                for (const auto& x : vr) {
                    std::vector<Rat> vb(e);
                    for (int i = 0; i < e; ++i) vb[i] = x[i] + beta[i];
                    Rat num = Rat(a) * L.q_raw(vb) - L.pairing_raw(L.coords(g), vb) + Rat(d) * qg;
                    acc += cexp(mod1(num / Rat(c)));
                }
                r.at(bidx, g) = pref * acc;
            }
        }
    }
    if (branch < 0) {
        // other metaplectic preimage: multiply by rho(Z)^2 = i^{2 sig}
        std::complex<double> z2 = sqrt_i_pow(4L * sig);
        for (auto& x : r.a) x *= z2;
    }
    return r;
}

RepMatrix rho_word(const Lattice& L, const std::string& word, Mat2* M_out) {
    int n = static_cast<int>(L.group_order());
    RepMatrix acc(n);
    for (int i = 0; i < n; ++i) acc.at(i, i) = 1.0;
    Mat2 M{1, 0, 0, 1};
    RepMatrix T = rho_T(L), S = rho_S(L);
    RepMatrix Ti = T.adjoint(), Si = S.adjoint();
    auto mul2 = [](const Mat2& x, const Mat2& y) {
        return Mat2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                    x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    for (char ch : word) {
        switch (ch) {
            case 'T':
                acc = acc * T;
                M = mul2(M, Mat2{1, 1, 0, 1});
                break;
            case 't':
                acc = acc * Ti;
                M = mul2(M, Mat2{1, -1, 0, 1});
                break;
            case 'S':
                acc = acc * S;
                M = mul2(M, Mat2{0, -1, 1, 0});
                break;
            case 's':
                acc = acc * Si;
                M = mul2(M, Mat2{0, 1, -1, 0});
                break;
            default:
                throw MathError("rho_word: bad letter");
        }
    }
    if (M_out) *M_out = M;
    return acc;
}

RepMatrix sigma_action(const Lattice& L, int beta, long lambda, long mu, long t) {
    int n = static_cast<int>(L.group_order());
    RepMatrix r(n);
    Rat qb = L.q_value(beta);
    for (int g = 0; g < n; ++g) {
        // sigma_beta(lambda,mu,t) e_gamma = e(mu <beta,gamma> + (t - lambda mu) q(beta))
        //                                   e_{gamma - lambda beta}
        Rat phase = mod1(Rat(mu) * L.pairing(beta, g) + Rat(t - lambda * mu) * qb);
        int target = L.add(g, L.neg(L.smul(Int(lambda), beta)));
        r.at(target, g) = cexp(phase);
    }
    return r;
}

std::array<long, 3> heisenberg_act(const std::array<long, 3>& zeta, const Mat2& M) {
    return {M[0] * zeta[0] + M[2] * zeta[1], M[1] * zeta[0] + M[3] * zeta[1], zeta[2]};
}

FourierExpansion average(const Lattice& L, int beta, const FourierExpansion& F) {
    if (F.lattice != &L) throw MathError("average: expansion belongs to a different lattice");
    Int d = L.denominator(beta);
    Int d2 = d * d;
    Rat qb = L.q_value(beta);
    FourierExpansion out;
    out.lattice = &L;
    out.weight = F.weight;
    out.prec = F.prec;
    for (Int lam = 0; lam < d2; ++lam) {
        int shift = L.neg(L.smul(lam, beta));
        std::vector<int> target(L.group_order(), -1);
        for (long g = 0; g < L.group_order(); ++g) {
            // gamma contributes iff <beta,gamma> - lambda q(beta) in Z
            if (!is_integer(Rat(L.pairing(beta, static_cast<int>(g)) - Rat(lam) * qb))) continue;
            target[g] = L.add(static_cast<int>(g), shift);
        }
        for (const auto& [key, c] : F.coeff) {
            int t = target[key.first];
            if (t >= 0) out.coeff[{t, key.second}] += c;
        }
    }
    return out;
}

}  // namespace vvmf
