#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;

// Error taxonomy shared across the library.  Each carries the symbolic kind
// used by the CLI report contract.
struct ToricError : std::runtime_error {
    std::string kind;
    ToricError(std::string k, const std::string& what)
        : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

inline ToricError err(const std::string& kind, const std::string& what) {
    return ToricError(kind, what);
}

inline Int pow_int(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Modular inverse of a mod m, for gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int old_r = mod_floor(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw err("Internal", "inv_mod: not invertible");
    return mod_floor(old_s, m);
}

inline Int pow_mod(Int b, Int e, const Int& m) {
    Int r = 1;
    b = mod_floor(b, m);
    while (e > 0) {
        if ((e & 1) != 0) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exact rotation number in Q/Z: value e^{2*pi*i*(num/den)}, kept reduced with
// 0 <= num < den.  All character values in the library live here until the
// final complex exponentiation.
struct Rot {
    Int num = 0;
    Int den = 1;

    Rot() = default;
    Rot(Int n, Int d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den < 0) {
            den = -den;
            num = -num;
        }
        if (den == 0) throw err("Internal", "Rot with zero denominator");
        num = mod_floor(num, den);
        Int g = boost::multiprecision::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    bool is_zero() const { return num == 0; }
    Rot operator+(const Rot& o) const { return Rot(num * o.den + o.num * den, den * o.den); }
    Rot operator-(const Rot& o) const { return Rot(num * o.den - o.num * den, den * o.den); }
    Rot operator-() const { return Rot(-num, den); }
    Rot operator*(const Int& k) const { return Rot(num * k, den); }
    bool operator==(const Rot& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rot& o) const { return !(*this == o); }

    double angle() const;  // 2*pi*num/den
    std::string str() const { return num.str() + "/" + den.str(); }
};

inline double rot_to_double(const Rot& r) {
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

// Seeded deterministic RNG.  All corpus randomness flows through this; no
// wall-clock or environment dependence.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

// Smith normal form of an integer matrix: returns (D, U, V) with
// U * A * V = D diagonal, d_i | d_{i+1}.  Sizes here are tiny (unit-group
// relation matrices), so the classic elimination is plenty.
struct Snf {
    std::vector<std::vector<Int>> d, u, v;
};

Snf smith_normal_form(std::vector<std::vector<Int>> a);

// Solve m * y = c (mod n) for integral y, where m is k x r.  Returns false
// when the system has no solution.  Used for extending characters along
// subgroup inclusions and for enumerating dual groups.
bool solve_linear_mod(const std::vector<std::vector<Int>>& m, const std::vector<Int>& c,
                      const Int& n, std::vector<Int>& y);

}  // namespace toric
