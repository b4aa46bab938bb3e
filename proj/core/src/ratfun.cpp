#include "vvmf/ratfun.hpp"

namespace vvmf {

Poly Poly::monomial(const Rat& a, int deg) {
    Poly p;
    if (a == 0) return p;
    p.c.assign(static_cast<size_t>(deg) + 1, Rat(0));
    p.c[static_cast<size_t>(deg)] = a;
    return p;
}

void Poly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat Poly::eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Rat& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c) x *= s;
    return r;
}

Poly Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) throw MathError("Poly: division by zero polynomial");
    Poly rem = *this, q;
    if (rem.degree() >= d.degree()) q.c.assign(static_cast<size_t>(rem.degree() - d.degree()) + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int k = rem.degree() - d.degree();
        Rat f = rem.c.back() / d.c.back();
        q.c[static_cast<size_t>(k)] = f;
        for (size_t i = 0; i < d.c.size(); ++i)
            rem.c[static_cast<size_t>(k) + i] -= f * d.c[i];
        rem.trim();
    }
    if (!rem.is_zero()) throw MathError("Poly: inexact division");
    q.trim();
    return q;
}

Poly gcd(Poly a, Poly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        // remainder of a by b
        Poly rem = a;
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int k = rem.degree() - b.degree();
            Rat f = rem.c.back() / b.c.back();
            for (size_t i = 0; i < b.c.size(); ++i)
                rem.c[static_cast<size_t>(k) + i] -= f * b.c[i];
            rem.trim();
        }
        a = b;
        b = rem;
    }
    if (!a.is_zero()) {
        Rat lead = a.c.back();
        for (auto& x : a.c) x /= lead;
    }
    return a;
}

RatFun::RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw MathError("RatFun: zero denominator");
    reduce();
}

void RatFun::reduce() {
    if (num.is_zero()) {
        den = Poly(Rat(1));
        return;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = num.divide_exact(g);
        den = den.divide_exact(g);
    }
    // normalize: den monic
    Rat lead = den.c.back();
    if (lead != 1) {
        for (auto& x : den.c) x /= lead;
        for (auto& x : num.c) x /= lead;
    }
}

RatFun RatFun::operator+(const RatFun& o) const { return RatFun(num * o.den + o.num * den, den * o.den); }
RatFun RatFun::operator-(const RatFun& o) const { return RatFun(num * o.den - o.num * den, den * o.den); }
RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num * o.num, den * o.den); }
RatFun RatFun::operator/(const RatFun& o) const {
    if (o.num.is_zero()) throw MathError("RatFun: division by zero");
    return RatFun(num * o.den, den * o.num);
}
RatFun RatFun::operator*(const Rat& s) const { return RatFun(num * s, den); }

bool RatFun::operator==(const RatFun& o) const {
    return (num * o.den) == (o.num * den);
}

Rat RatFun::eval(const Rat& t) const {
    Rat d = den.eval(t);
    if (d == 0) {
        if (num.eval(t) == 0)
            throw MathError("RatFun: unreduced 0/0 (internal)");
        throw PoleError("RatFun: pole at t = " + to_string(t));
    }
    return num.eval(t) / d;
}

std::vector<Rat> RatFun::series(int count) const {
    if (den.is_zero() || den.eval(Rat(0)) == 0)
        throw PoleError("RatFun: series expansion around a pole at t = 0");
    std::vector<Rat> out(static_cast<size_t>(count), Rat(0));
    Rat d0 = den.eval(Rat(0));
    for (int j = 0; j < count; ++j) {
        Rat acc = (j < static_cast<int>(num.c.size())) ? num.c[static_cast<size_t>(j)] : Rat(0);
        for (int i = 1; i <= j && i < static_cast<int>(den.c.size()); ++i)
            acc -= den.c[static_cast<size_t>(i)] * out[static_cast<size_t>(j - i)];
        out[static_cast<size_t>(j)] = acc / d0;
    }
    return out;
}

}  // namespace vvmf
