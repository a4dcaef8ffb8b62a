#pragma once

#include <optional>
#include <string>

#include "toric/padic.hpp"

namespace toric::quadext {

// Element a + b*sqrt(d) of a quadratic field extension of a p-adic base
// field M; conjugation flips the sign of b.
struct QElem {
    padic::Elem a, b;
};

// L = M(sqrt(d)) with d a non-square of M of valuation 0 or 1.  The pair
// representation keeps every tower in the collection two-step: base change
// never has to flatten composite extensions.  Split algebras M x M are a
// separate code path (see etale layer); this class is only the field case.
class QuadField {
  public:
    using Elem = QElem;

    QuadField(padic::FieldPtr base, padic::Elem d);

    const padic::Field& base() const { return *base_; }
    padic::FieldPtr base_ptr() const { return base_; }
    const padic::Elem& d() const { return d_; }
    bool ramified() const { return ram_; }

    const Int& p() const { return base_->p(); }
    int prec() const { return prec_; }  // pi_L-adic precision
    int abs_e() const { return abs_e_; }
    int abs_f() const { return abs_f_; }
    const Int& q() const { return q_; }
    long different_exp() const { return diff_; }  // d(L/Q_p)

    Elem zero() const { return {base_->zero(), base_->zero()}; }
    Elem one() const { return {base_->one(), base_->zero()}; }
    Elem from_int(const Int& n) const { return {base_->from_int(n), base_->zero()}; }
    Elem from_base(const padic::Elem& a) const { return {a, base_->zero()}; }
    Elem sqrt_d() const { return {base_->zero(), base_->one()}; }
    Elem make(const padic::Elem& a, const padic::Elem& b) const { return {a, b}; }
    Elem uniformizer() const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem inv(const Elem& x) const;
    Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }
    Elem pow_i(Elem x, Int k) const;

    Elem conj(const Elem& x) const { return {x.a, base_->neg(x.b)}; }
    padic::Elem norm_to_base(const Elem& x) const;   // x * conj(x)
    padic::Elem trace_to_base(const Elem& x) const;  // x + conj(x)

    std::optional<long> val(const Elem& x) const;  // pi_L-normalized
    bool is_zero(const Elem& x) const { return !val(x).has_value(); }
    bool eq(const Elem& x, const Elem& y) const { return is_zero(sub(x, y)); }

    std::int64_t res_size() const { return static_cast<std::int64_t>(q_); }
    std::int64_t residue_index(const Elem& x) const;
    Elem residue_lift(std::int64_t idx) const;
    Elem shift_pi(const Elem& x, long t) const;

    Rot trace_rot(const Elem& x) const;  // frac of tr_{L/Q_p}(x)

    std::string to_str(const Elem& x) const;

  private:
    padic::FieldPtr base_;
    padic::Elem d_;
    bool ram_;
    int abs_e_, abs_f_, prec_;
    Int q_;
    long diff_;
};

// Galois conjugation of a degree-2 padic field over Q_p (used for relative
// norms N_{L/K} with [L:K] = 2 coming from a quadratic component F_j).
padic::Elem galois_conj_deg2(const padic::Field& fld, const padic::Elem& x);

// Hensel square root for odd p; nullopt when x is a non-square.
std::optional<padic::Elem> sqrt_hensel(const padic::Field& fld, const padic::Elem& x);

}  // namespace toric::quadext
