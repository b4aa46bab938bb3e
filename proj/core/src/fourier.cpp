#include "vvmf/fourier.hpp"

#include <algorithm>

namespace vvmf {

FourierExpansion& FourierExpansion::operator+=(const FourierExpansion& o) {
    if (lattice != o.lattice) throw MathError("FourierExpansion: lattice mismatch");
    if (weight.two != o.weight.two) throw MathError("FourierExpansion: weight mismatch");
    prec = std::min(prec, o.prec);
    for (const auto& [key, c] : o.coeff) coeff[key] += c;
    return *this;
}

FourierExpansion& FourierExpansion::operator-=(const FourierExpansion& o) {
    if (lattice != o.lattice) throw MathError("FourierExpansion: lattice mismatch");
    if (weight.two != o.weight.two) throw MathError("FourierExpansion: weight mismatch");
    prec = std::min(prec, o.prec);
    for (const auto& [key, c] : o.coeff) coeff[key] -= c;
    return *this;
}

FourierExpansion& FourierExpansion::operator*=(const Rat& s) {
    for (auto& [key, c] : coeff) c *= s;
    return *this;
}

std::vector<Rat> FourierExpansion::exponents(const Lattice& L, int gamma, const Rat& lo,
                                             const Rat& hi) {
    std::vector<Rat> out;
    Rat frac = mod1(-L.q_value(gamma));  // exponents lie in frac + Z
    Int j = ceil_rat(lo - frac);
    for (Rat n = frac + Rat(j); n < hi; n += 1) out.push_back(n);
    return out;
}

FourierExpansion FourierExpansion::convolve_integer_series(const std::vector<Int>& s, long j0,
                                                           const Rat& out_prec) const {
    FourierExpansion out;
    out.lattice = lattice;
    out.weight = weight;
    out.prec = out_prec;
    for (const auto& [key, c] : coeff) {
        if (c == 0) continue;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == 0) continue;
            Rat n = key.second + Rat(j0 + static_cast<long>(i));
            if (n >= out_prec) break;
            out.coeff[{key.first, n}] += c * Rat(s[i]);
        }
    }
    return out;
}

std::vector<Int> delta_coefficients(int N) {
    // eta(tau)^24 as integer convolution of prod (1 - q^n)
    if (N < 1) return {};
    std::vector<Int> f(N, 0);  // f[j] ~ q^j, j = 0..N-1: prod (1-q^n) truncated
    f[0] = 1;
    for (int n = 1; n < N; ++n) {
        for (int j = N - 1; j >= n; --j) f[j] -= f[j - n];
    }
    std::vector<Int> acc = f;
    for (int pw = 1; pw < 24; ++pw) {
        std::vector<Int> next(N, 0);
        for (int i = 0; i < N; ++i) {
            if (acc[i] == 0) continue;
            for (int j = 0; i + j < N; ++j)
                if (f[j] != 0) next[i + j] += acc[i] * f[j];
        }
        acc = std::move(next);
    }
    return acc;  // acc[j] = coefficient of q^{1+j} in Delta
}

std::vector<Rat> delta_inverse_coefficients(int N) {
    std::vector<Int> d = delta_coefficients(N + 1);  // d[0] = 1
    std::vector<Rat> inv(N + 1, Rat(0));
    inv[0] = 1;
    for (int j = 1; j <= N; ++j) {
        Rat acc(0);
        for (int i = 1; i <= j && i < static_cast<int>(d.size()); ++i)
            acc += Rat(d[i]) * inv[j - i];
        inv[j] = -acc;
    }
    return inv;  // inv[j] = coefficient of q^{-1+j} in 1/Delta
}

}  // namespace vvmf
