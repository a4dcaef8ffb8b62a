#include "toric/fq.hpp"

#include <algorithm>

namespace toric {

namespace {

using Poly = std::vector<std::int64_t>;

std::int64_t md(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

// product of polynomials mod p, reduced mod monic g
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::int64_t p) {
    int f = static_cast<int>(g.size()) - 1;
    std::vector<std::int64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = md(prod[i + j] + a[i] * b[j], p);
    }
    for (int d = static_cast<int>(prod.size()) - 1; d >= f; --d) {
        std::int64_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (int i = 0; i < f; ++i) prod[d - f + i] = md(prod[d - f + i] - c * g[i], p);
    }
    prod.resize(f, 0);
    return prod;
}

}  // namespace

Fq::Fq(std::int64_t p, std::vector<std::int64_t> g_monic) : p_(p), g_(std::move(g_monic)) {
    f_ = static_cast<int>(g_.size()) - 1;
    if (f_ < 1 || g_[f_] != 1) throw err("Internal", "Fq: defining polynomial must be monic");
    for (auto& c : g_) c = md(c, p_);
    q_ = 1;
    for (int i = 0; i < f_; ++i) q_ *= p_;
}

Fq::El Fq::one() const {
    El e(f_, 0);
    e[0] = 1;
    return e;
}

Fq::El Fq::from_int(std::int64_t a) const {
    El e(f_, 0);
    e[0] = md(a, p_);
    return e;
}

bool Fq::is_zero(const El& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

Fq::El Fq::add(const El& a, const El& b) const {
    El r(f_);
    for (int i = 0; i < f_; ++i) r[i] = md(a[i] + b[i], p_);
    return r;
}

Fq::El Fq::sub(const El& a, const El& b) const {
    El r(f_);
    for (int i = 0; i < f_; ++i) r[i] = md(a[i] - b[i], p_);
    return r;
}

Fq::El Fq::neg(const El& a) const {
    El r(f_);
    for (int i = 0; i < f_; ++i) r[i] = md(-a[i], p_);
    return r;
}

Fq::El Fq::mul(const El& a, const El& b) const { return poly_mulmod(a, b, g_, p_); }

Fq::El Fq::pow(El a, Int e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    El r = one();
    while (e > 0) {
        if ((e & 1) != 0) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fq::El Fq::inv(const El& a) const {
    if (is_zero(a)) throw err("DivisionByNearZero", "Fq inverse of zero");
    return pow(a, q_ - 2);
}

std::int64_t Fq::index(const El& a) const {
    std::int64_t idx = 0;
    for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a[i];
    return idx;
}

Fq::El Fq::from_index(std::int64_t i) const {
    El e(f_);
    for (int k = 0; k < f_; ++k) {
        e[k] = i % p_;
        i /= p_;
    }
    return e;
}

bool Fq::is_square(const El& a) const {
    if (is_zero(a)) throw err("Internal", "is_square of zero");
    return eq(pow(a, (q_ - 1) / 2), one());
}

Int Fq::order(const El& a) const {
    Int o = q_ - 1;
    Int n = o;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        while (o % d == 0 && eq(pow(a, o / d), one())) o /= d;
    }
    if (n > 1)
        while (o % n == 0 && eq(pow(a, o / n), one())) o /= n;
    return o;
}

Fq::El Fq::multiplicative_generator() const {
    for (std::int64_t i = 1; i < q_; ++i) {
        El a = from_index(i);
        if (is_zero(a)) continue;
        if (order(a) == q_ - 1) return a;
    }
    throw err("Internal", "no multiplicative generator found");
}

bool Fq::poly_irreducible(std::int64_t p, const std::vector<std::int64_t>& g) {
    int f = static_cast<int>(g.size()) - 1;
    if (f == 1) return true;
    Fq ring(p, g);  // quotient ring, maybe not a field yet
    // g irreducible iff x^{p^f} = x in the quotient and gcd-style test
    // x^{p^d} != x for proper divisors d of f.
    Fq::El x(static_cast<std::size_t>(f), 0);
    x[1] = 1;
    auto frob = [&](Fq::El a, int times) {
        for (int t = 0; t < times; ++t) a = ring.pow(a, p);
        return a;
    };
    if (!(frob(x, f) == x)) return false;
    for (int d = 1; d < f; ++d) {
        if (f % d != 0) continue;
        if (frob(x, d) == x) return false;
    }
    return true;
}

std::vector<std::int64_t> Fq::find_irreducible(std::int64_t p, int f) {
    if (f == 1) return {0, 1};  // x
    // search monic x^f + c_{f-1} x^{f-1} + ... + c_0, lexicographic in packed index
    std::int64_t total = 1;
    for (int i = 0; i < f; ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<std::int64_t> g(f + 1, 0);
        std::int64_t t = idx;
        for (int i = 0; i < f; ++i) {
            g[i] = t % p;
            t /= p;
        }
        g[f] = 1;
        if (g[0] == 0) continue;  // reducible (x divides)
        if (poly_irreducible(p, g)) return g;
    }
    throw err("Internal", "no irreducible polynomial found");
}

}  // namespace toric
