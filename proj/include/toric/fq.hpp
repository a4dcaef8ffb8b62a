#pragma once

#include <cstdint>
#include <vector>

#include "toric/util.hpp"

namespace toric {

// Arithmetic in the residue field F_q = F_p[w]/(g(w)), g monic irreducible of
// degree f.  Elements are coefficient vectors of length f with entries in
// [0, p).  Sizes are desk scale (q <= a few tens of thousands).
class Fq {
  public:
    Fq(std::int64_t p, std::vector<std::int64_t> g_monic);  // g has length f+1, g[f] = 1

    using El = std::vector<std::int64_t>;

    std::int64_t p() const { return p_; }
    int f() const { return f_; }
    std::int64_t q() const { return q_; }

    El zero() const { return El(f_, 0); }
    El one() const;
    El from_int(std::int64_t a) const;

    bool is_zero(const El& a) const;
    bool eq(const El& a, const El& b) const { return a == b; }

    El add(const El& a, const El& b) const;
    El sub(const El& a, const El& b) const;
    El neg(const El& a) const;
    El mul(const El& a, const El& b) const;
    El pow(El a, Int e) const;
    El inv(const El& a) const;

    // Dense index in [0, q): mixed radix over coefficients.
    std::int64_t index(const El& a) const;
    El from_index(std::int64_t i) const;

    // Euler criterion; a must be nonzero.
    bool is_square(const El& a) const;

    // A generator of F_q^x (smallest by index that has full order).
    El multiplicative_generator() const;

    // Order of a in F_q^x.
    Int order(const El& a) const;

    static bool poly_irreducible(std::int64_t p, const std::vector<std::int64_t>& g);
    // Deterministic monic irreducible of degree f over F_p (smallest by
    // lexicographic coefficient search).
    static std::vector<std::int64_t> find_irreducible(std::int64_t p, int f);

  private:
    std::int64_t p_;
    int f_;
    std::int64_t q_;
    std::vector<std::int64_t> g_;  // monic, length f_+1
};

}  // namespace toric
