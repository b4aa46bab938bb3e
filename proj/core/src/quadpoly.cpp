#include "vvmf/quadpoly.hpp"

#include <cmath>

namespace vvmf {

Rat QuadPoly::eval(const std::vector<Int>& x) const {
    Rat acc = c;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        acc += b[static_cast<size_t>(i)] * Rat(x[i]);
        acc += a(i, i) * Rat(x[i] * x[i]);
        for (int j = i + 1; j < n; ++j)
            if (x[j] != 0) acc += 2 * a(i, j) * Rat(x[i] * x[j]);
    }
    return acc;
}

bool QuadPoly::is_p_integral(const Int& p) const {
    auto ok = [&](const Rat& x) { return x == 0 || valuation(x, p) >= 0; };
    for (int i = 0; i < n; ++i) {
        if (!ok(a(i, i)) || !ok(b[static_cast<size_t>(i)])) return false;
        for (int j = i + 1; j < n; ++j)
            if (!ok(Rat(2 * a(i, j)))) return false;
    }
    return ok(c);
}

bool QuadPoly::quadratic_is_zero() const {
    for (const auto& x : A)
        if (x != 0) return false;
    return true;
}

QuadPoly jacobi_polynomial(const Lattice& L, int beta, int gamma, const Rat& m, const Rat& n,
                           const Rat& r) {
    int e = L.rank();
    QuadPoly f(e + 1);
    const auto& bc = L.coords(beta);
    const auto& gc = L.coords(gamma);
    const IMat& S = L.gram();
    // quadratic part: (1/2) v^T S v + <v, beta> lambda + (m + q(beta)) lambda^2
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) f.a(i, j) = make_rat(S[i][j], 2);
    for (int i = 0; i < e; ++i) {
        Rat sb(0);
        for (int j = 0; j < e; ++j) sb += Rat(S[i][j]) * bc[j];
        f.a(i, e) = sb / 2;
        f.a(e, i) = f.a(i, e);
    }
    f.a(e, e) = m + L.q_raw(bc);
    // linear part: -<v, gamma> - (<beta,gamma> + r) lambda
    for (int i = 0; i < e; ++i) {
        Rat sg(0);
        for (int j = 0; j < e; ++j) sg += Rat(S[i][j]) * gc[j];
        f.b[static_cast<size_t>(i)] = -sg;
    }
    f.b[static_cast<size_t>(e)] = -(L.pairing_raw(bc, gc) + r);
    // constant: q(gamma) + n
    f.c = L.q_raw(gc) + n;
    return f;
}

QuadPoly bk_polynomial(const Lattice& L, int gamma, const Rat& n) {
    int e = L.rank();
    QuadPoly f(e);
    const auto& gc = L.coords(gamma);
    const IMat& S = L.gram();
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) f.a(i, j) = make_rat(S[i][j], 2);
    for (int i = 0; i < e; ++i) {
        Rat sg(0);
        for (int j = 0; j < e; ++j) sg += Rat(S[i][j]) * gc[j];
        f.b[static_cast<size_t>(i)] = -sg;
    }
    f.c = L.q_raw(gc) + n;
    return f;
}

QuadPoly append_hyperbolic(const QuadPoly& f) {
    QuadPoly g(f.n + 2);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) g.a(i, j) = f.a(i, j);
    for (int i = 0; i < f.n; ++i) g.b[static_cast<size_t>(i)] = f.b[static_cast<size_t>(i)];
    g.c = f.c;
    g.a(f.n, f.n + 1) = make_rat(1, 2);
    g.a(f.n + 1, f.n) = make_rat(1, 2);
    return g;
}

Int count_solutions(const QuadPoly& f, const Int& p, int nu) {
    if (nu == 0) return Int(1);
    Int pn = pow_int(p, static_cast<unsigned long>(nu));
    // state-count guard
    double states = std::pow(pn.get_d(), f.n);
    if (states > 1e8) throw MathError("count_solutions: enumeration too large");
    if (f.n == 0) {
        if (f.c == 0) return Int(1);
        if (!is_integer(f.c)) {
            if (valuation(f.c, p) < 0) return Int(0);
        }
        return (valuation(f.c, p) >= nu) ? Int(1) : Int(0);
    }
    std::vector<Int> x(static_cast<size_t>(f.n), 0);
    Int count = 0;
    for (;;) {
        Rat v = f.eval(x);
        bool sol = (v == 0) || (valuation(v, p) >= nu);
        if (sol) ++count;
        int pos = f.n - 1;
        while (pos >= 0) {
            x[static_cast<size_t>(pos)] += 1;
            if (x[static_cast<size_t>(pos)] < pn) break;
            x[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

}  // namespace vvmf
