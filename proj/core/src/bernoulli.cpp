#include "vvmf/bernoulli.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace vvmf {

namespace {
std::shared_mutex bernoulli_mutex;
std::vector<Rat> bernoulli_table;  // grows monotonically

void extend_bernoulli_locked(unsigned long n) {
    if (bernoulli_table.empty()) {
        bernoulli_table.push_back(Rat(1));
        bernoulli_table.push_back(make_rat(-1, 2));
    }
    while (bernoulli_table.size() <= n) {
        unsigned long m = bernoulli_table.size();
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        Rat acc(0);
        for (unsigned long k = 0; k < m; ++k)
            acc += Rat(binomial(m + 1, k)) * bernoulli_table[k];
        bernoulli_table.push_back(-acc / Rat(m + 1));
    }
}
}  // namespace

Rat bernoulli_number(unsigned long n) {
    {
        std::shared_lock lock(bernoulli_mutex);
        if (n < bernoulli_table.size()) return bernoulli_table[n];
    }
    std::unique_lock lock(bernoulli_mutex);
    extend_bernoulli_locked(n);
    return bernoulli_table[n];
}

Rat bernoulli_poly(unsigned long n, const Rat& x) {
    Rat acc(0);
    Rat xp(1);
    // B_n(x) = sum_j C(n,j) B_{n-j} x^j
    for (unsigned long j = 0; j <= n; ++j) {
        acc += Rat(binomial(n, j)) * bernoulli_number(n - j) * xp;
        xp *= x;
    }
    return acc;
}

Rat generalized_bernoulli(unsigned long n, const Int& D0) {
    if (D0 == 0) throw MathError("generalized_bernoulli: D0 = 0");
    Int f = abs(D0);
    Rat acc(0);
    for (Int a = 1; a <= f; ++a) {
        int chi = kronecker(D0, a);
        if (chi == 0) continue;
        acc += Rat(chi) * bernoulli_poly(n, make_rat(a, f));
    }
    return pow_rat(Rat(f), static_cast<long>(n) - 1) * acc;
}

#ifndef NDEBUG
namespace {
double l_value_numeric(const Int& D, unsigned long s0, unsigned long terms) {
    double acc = 0;
    for (unsigned long a = 1; a <= terms; ++a) {
        int chi = mpz_kronecker_si(D.get_mpz_t(), static_cast<long>(a));
        if (chi) acc += chi * std::pow(static_cast<double>(a), -static_cast<double>(s0));
    }
    return acc;
}
}  // namespace
#endif

AlgebraicScalar l_value_critical(const Int& D, unsigned long s0) {
    if (s0 == 0) throw MathError("l_value_critical: s0 must be positive");
    auto [D0, f] = fundamental_discriminant(D);
    int delta = (D0 < 0) ? 1 : 0;
    if (static_cast<int>(s0 % 2) != delta)
        throw MathError("l_value_critical: parity mismatch between s0 = " + std::to_string(s0) +
                        " and chi_{" + D0.get_str() + "}(-1)");
    if (D0 == 1 && s0 == 1) throw PoleError("l_value_critical: pole of zeta at s = 1");

    Int fd = abs(D0);
    Rat B = generalized_bernoulli(s0, D0);
    // L(s0, chi) = (-1)^{1+floor(s0/2)} 2^{s0-1} pi^{s0} sqrt(fd) B / (s0! fd^{s0})
    int sign = ((1 + s0 / 2) % 2 == 0) ? 1 : -1;
    Rat coeff = Rat(sign) * Rat(pow_int(Int(2), s0 - 1)) * B /
                (Rat(factorial(s0)) * Rat(pow_int(fd, s0)));
    AlgebraicScalar val = AlgebraicScalar(coeff, static_cast<int>(2 * s0), Int(1)) *
                          AlgebraicScalar::sqrt_of(Rat(fd));

    // Imprimitivity factors at primes dividing D but not D0.
    if (f > 1) {
        Rat euler(1);
        for (const auto& [p, e] : factor(f)) {
            (void)e;
            if (D0 % p == 0) continue;
            int chi = kronecker(D0, p);
            euler *= Rat(1) - Rat(chi) / Rat(pow_int(p, s0));
        }
        val = val * euler;
    }

#ifndef NDEBUG
    if (abs(D) < 500 && s0 >= 2 && s0 <= 10) {
        double approx = val.approx();
        double direct = l_value_numeric(D, s0, 200000);
        double scale = std::max(1.0, std::abs(approx));
        if (std::abs(approx - direct) > 1e-5 * scale)
            throw MathError("l_value_critical: debug cross-check failed for D = " + D.get_str() +
                            ", s0 = " + std::to_string(s0));
    }
#endif
    return val;
}

}  // namespace vvmf
