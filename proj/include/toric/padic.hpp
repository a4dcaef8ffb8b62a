#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toric/fq.hpp"
#include "toric/util.hpp"

namespace toric::padic {

// A p-adic number p^pshift * c, known modulo p^(pshift + known_rel).
// Norms and traces down to Q_p land here.
struct QpNum {
    Int c = 0;
    long pshift = 0;
    long known_rel = 0;

    bool is_unit() const { return c != 0; }
    Rot frac(const Int& p) const;  // class of the value in Q_p/Z_p
};

// Element of a two-step tower field, see Field below.  The value is
// pi^shift * (integral coefficient vector); shift <= 0 after reduction and
// the vector is a unit whenever shift < 0.  `known` is the absolute
// precision: the value is known modulo pi^known.
struct Elem {
    std::vector<Int> c;
    int shift = 0;
    long known = 0;
};

// Finite extension M of Q_p (p odd) presented as a two-step tower:
//   U = Q_p[w]/(g(w)),  g monic irreducible of degree f (unramified step),
//   M = U[x]/(E(x)),    E monic Eisenstein of degree e over U.
// Elements are stored on the power basis {w^i pi^j : i < f, j < e} with
// integer coefficients; all arithmetic is exact modulo pi^N.
class Field {
  public:
    using Elem = toric::padic::Elem;

    // eis holds e+1 coefficients of E, each a length-f vector over the power
    // basis of U; eis.back() must be [1,0,...] (monic).
    Field(Int p, int f, std::vector<std::vector<Int>> eis, int precision);

    // Convenience: Q_p itself (tower x - p).
    static std::shared_ptr<const Field> make_qp(const Int& p, int precision);
    // Unramified extension of degree f (tower x - p over U).
    static std::shared_ptr<const Field> make_unramified(const Int& p, int f, int precision);
    // Eisenstein step with integer coefficients (embedded into U).
    static std::shared_ptr<const Field> make_eisenstein(const Int& p, int f,
                                                        const std::vector<Int>& eis_int,
                                                        int precision);

    const Int& p() const { return p_; }
    int f() const { return f_; }
    int e() const { return e_; }
    int degree() const { return d_; }
    int prec() const { return n_; }
    const Int& q() const { return q_; }
    const Fq& res() const { return *res_; }
    const std::vector<Int>& unram_poly() const { return g_; }
    const std::vector<std::vector<Int>>& eis_poly() const { return eis_; }

    // ----- element construction -----
    Elem zero() const;
    Elem one() const;
    Elem from_int(const Int& a) const;
    Elem from_rational(const Int& num, const Int& den) const;
    Elem from_coeffs(const std::vector<Int>& c) const;  // integral, full precision
    Elem uniformizer() const;
    Elem gen_w() const;  // unramified generator w (= 1 when f = 1)

    // ----- arithmetic -----
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const;
    Elem pow_i(Elem a, Int k) const;

    // ----- structure -----
    // nullopt = BOTTOM: indistinguishable from 0 at the element's precision.
    std::optional<long> val(const Elem& a) const;
    bool is_zero(const Elem& a) const { return !val(a).has_value(); }
    bool eq(const Elem& a, const Elem& b) const;
    Elem reduce_known(Elem a, long k) const;  // truncate to absolute precision k

    // multiply by pi^t, t may be negative (exact when legal)
    Elem shift_pi(const Elem& a, long t) const;

    std::int64_t residue_index(const Elem& a) const;  // a integral
    Elem residue_lift(std::int64_t idx) const;
    Elem teichmuller(const Elem& unit) const;

    QpNum trace_to_qp(const Elem& a) const;
    QpNum norm_to_qp(const Elem& a) const;
    Rot trace_rot(const Elem& a) const { return trace_to_qp(a).frac(p_); }

    // Unramified subfield U as a Field (identity when e = 1).
    const Field& unram_subfield() const;
    Elem embed_unram(const Elem& u) const;        // U-element -> M
    std::vector<Elem> unram_coords(const Elem& a) const;  // coords over U on {pi^j}
    Elem trace_to_unram(const Elem& a) const;     // returned as U-element
    Elem norm_to_unram(const Elem& a) const;      // returned as U-element

    long different_exp() const { return different_; }  // d(M/Q_p)

    // canonical residue non-square (see square_class)
    const Elem& nonresidue() const { return nonres_; }

    Elem from_qpnum(const QpNum& x) const;  // embed a Q_p value

    std::string to_str(const Elem& a) const;

  private:
    Int p_;
    int f_, e_, d_, n_;
    Int q_;
    std::vector<Int> g_;                     // monic deg-f, integer coeffs
    std::vector<std::vector<Int>> eis_;      // monic deg-e, U-coeff vectors
    std::unique_ptr<Fq> res_;
    std::shared_ptr<const Field> unram_;     // null when e == 1
    std::vector<Int> p_over_pi_;             // p / pi as an integral unit vector... times
    long different_ = 0;
    Elem nonres_;
    QpNum norm_pi_;                          // N_{M/Qp}(pi)

    int slot(int i, int j) const { return j * f_ + i; }
    std::vector<Int> raw_mul(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::vector<Int> raw_add(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::optional<long> raw_val(const std::vector<Int>& v, long cap) const;
    void reduce_vec(std::vector<Int>& v, long rel_prec) const;
    std::vector<Int> div_pi_exact(std::vector<Int> v, long t) const;
    Elem canon(std::vector<Int> v, int shift, long known) const;
    std::vector<Int> unit_inv_vec(const std::vector<Int>& u, long rel_prec) const;
    // multiplication matrix of integral a over Q_p (d x d integer entries)
    std::vector<std::vector<Int>> mult_matrix(const Elem& a) const;
    void init_tables();
};

using FieldPtr = std::shared_ptr<const Field>;

// Exact integer determinant by cofactor expansion (entries are class
// representatives; the result represents det modulo the working modulus).
Int det_int(const std::vector<std::vector<Int>>& m);

}  // namespace toric::padic
