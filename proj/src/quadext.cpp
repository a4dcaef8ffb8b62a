#include "toric/quadext.hpp"

#include <sstream>

namespace toric::quadext {

using padic::Elem;
using padic::Field;

QuadField::QuadField(padic::FieldPtr base, padic::Elem d) : base_(std::move(base)), d_(std::move(d)) {
    auto vd = base_->val(d_);
    if (!vd) throw err("PrecisionExhausted", "d indistinguishable from 0");
    if (*vd != 0 && *vd != 1)
        throw err("Internal", "QuadField wants d with valuation 0 or 1 (reduce the square class first)");
    ram_ = (*vd == 1);
    if (!ram_) {
        padic::Elem t = base_->pow_i(d_, (base_->q() - 1) / 2);
        if (base_->residue_index(t) == base_->residue_index(base_->one()))
            throw err("Internal", "QuadField: d is a square (the algebra splits)");
    }
    abs_e_ = base_->e() * (ram_ ? 2 : 1);
    abs_f_ = base_->f() * (ram_ ? 1 : 2);
    q_ = ram_ ? base_->q() : base_->q() * base_->q();
    prec_ = base_->prec() * (ram_ ? 2 : 1);
    // d(L/Q_p) = d(L/M) + e(L/M) d(M/Q_p); the ramified quadratic step at
    // odd p contributes v_L(2 sqrt(d)) = 1, the unramified one nothing.
    diff_ = (ram_ ? 1 : 0) + (ram_ ? 2 : 1) * base_->different_exp();
}

QuadField::Elem QuadField::uniformizer() const {
    if (ram_) return sqrt_d();
    return from_base(base_->uniformizer());
}

QuadField::Elem QuadField::add(const Elem& x, const Elem& y) const {
    return {base_->add(x.a, y.a), base_->add(x.b, y.b)};
}

QuadField::Elem QuadField::sub(const Elem& x, const Elem& y) const {
    return {base_->sub(x.a, y.a), base_->sub(x.b, y.b)};
}

QuadField::Elem QuadField::neg(const Elem& x) const { return {base_->neg(x.a), base_->neg(x.b)}; }

QuadField::Elem QuadField::mul(const Elem& x, const Elem& y) const {
    // (a + b s)(a' + b' s) = (aa' + bb' d) + (ab' + a'b) s
    const Field& m = *base_;
    return {m.add(m.mul(x.a, y.a), m.mul(m.mul(x.b, y.b), d_)),
            m.add(m.mul(x.a, y.b), m.mul(x.b, y.a))};
}

padic::Elem QuadField::norm_to_base(const Elem& x) const {
    const Field& m = *base_;
    return m.sub(m.mul(x.a, x.a), m.mul(m.mul(x.b, x.b), d_));
}

padic::Elem QuadField::trace_to_base(const Elem& x) const {
    return base_->add(x.a, x.a);
}

QuadField::Elem QuadField::inv(const Elem& x) const {
    padic::Elem n = norm_to_base(x);
    padic::Elem ni = base_->inv(n);
    return {base_->mul(x.a, ni), base_->neg(base_->mul(x.b, ni))};
}

QuadField::Elem QuadField::pow_i(Elem x, Int k) const {
    if (k < 0) {
        x = inv(x);
        k = -k;
    }
    Elem r = one();
    while (k > 0) {
        if ((k & 1) != 0) r = mul(r, x);
        x = mul(x, x);
        k >>= 1;
    }
    return r;
}

std::optional<long> QuadField::val(const Elem& x) const {
    auto va = base_->val(x.a);
    auto vb = base_->val(x.b);
    if (ram_) {
        // v_L(a) = 2 v(a), v_L(b sqrt d) = 2 v(b) + 1: parities never meet
        std::optional<long> r;
        if (va) r = 2 * *va;
        if (vb && (!r || 2 * *vb + 1 < *r)) r = 2 * *vb + 1;
        return r;
    }
    // unramified: v_L = min(v(a), v(b)) exactly
    if (!va && !vb) return std::nullopt;
    if (!va) return vb;
    if (!vb) return va;
    return std::min(*va, *vb);
}

std::int64_t QuadField::residue_index(const Elem& x) const {
    auto v = val(x);
    if (v && *v < 0) throw err("Internal", "residue of a non-integral element");
    std::int64_t ia = base_->residue_index(x.a);
    if (ram_) return ia;
    std::int64_t ib = base_->residue_index(x.b);
    return ia + static_cast<std::int64_t>(base_->q()) * ib;
}

QuadField::Elem QuadField::residue_lift(std::int64_t idx) const {
    std::int64_t qb = static_cast<std::int64_t>(base_->q());
    if (ram_) return from_base(base_->residue_lift(idx));
    return {base_->residue_lift(idx % qb), base_->residue_lift(idx / qb)};
}

QuadField::Elem QuadField::shift_pi(const Elem& x, long t) const {
    if (!ram_) return {base_->shift_pi(x.a, t), base_->shift_pi(x.b, t)};
    if (t == 0) return x;
    // pi_L = sqrt(d), pi_L^2 = d
    Elem r = x;
    long pairs = (t > 0 ? t : -t) / 2;
    padic::Elem d2 = t > 0 ? d_ : base_->inv(d_);
    for (long s = 0; s < pairs; ++s) r = {base_->mul(r.a, d2), base_->mul(r.b, d2)};
    if (t % 2 != 0) r = t > 0 ? mul(r, sqrt_d()) : div(r, sqrt_d());
    return r;
}

Rot QuadField::trace_rot(const Elem& x) const { return base_->trace_rot(trace_to_base(x)); }

std::string QuadField::to_str(const Elem& x) const {
    std::ostringstream os;
    os << base_->to_str(x.a) << " + s*" << base_->to_str(x.b);
    return os.str();
}

padic::Elem galois_conj_deg2(const Field& fld, const padic::Elem& x) {
    if (fld.degree() == 1) return x;
    if (fld.degree() != 2)
        throw err("Unsupported", "galois conjugation implemented for degree <= 2 components");
    // basis {1, theta}: sigma(c0 + c1 theta) = c0 + c1 (s - theta), s = tr(theta)
    padic::Elem theta, s;
    if (fld.f() == 2) {
        theta = fld.gen_w();
        s = fld.from_int(-fld.unram_poly()[1]);
    } else {
        theta = fld.uniformizer();
        s = fld.neg(fld.from_coeffs({fld.eis_poly()[1][0], Int(0)}));
    }
    padic::Elem sigma_theta = fld.sub(s, theta);
    // conjugate the integral vector part on the basis {1, theta}
    padic::Elem c0 = fld.from_coeffs({x.c[0], Int(0)});
    padic::Elem c1 = fld.from_coeffs({x.c[1], Int(0)});
    padic::Elem res = fld.add(c0, fld.mul(c1, sigma_theta));
    if (x.shift != 0) {
        // sigma(pi^shift): pi is theta itself in the ramified layout
        padic::Elem sigma_pi = fld.f() == 2 ? fld.uniformizer() : sigma_theta;
        res = fld.mul(res, fld.pow_i(sigma_pi, x.shift));
    }
    return res;
}

std::optional<padic::Elem> sqrt_hensel(const Field& fld, const padic::Elem& x) {
    auto v = fld.val(x);
    if (!v) throw err("PrecisionExhausted", "sqrt of an element indistinguishable from 0");
    if (*v % 2 != 0) return std::nullopt;
    padic::Elem u = fld.shift_pi(x, -*v);
    // residue square root by scan (q is desk scale)
    std::int64_t r_idx = -1;
    std::int64_t q = static_cast<std::int64_t>(fld.q());
    std::int64_t target = fld.residue_index(u);
    for (std::int64_t i = 1; i < q; ++i) {
        padic::Elem cand = fld.residue_lift(i);
        if (fld.residue_index(fld.mul(cand, cand)) == target) {
            r_idx = i;
            break;
        }
    }
    if (r_idx < 0) return std::nullopt;
    padic::Elem y = fld.residue_lift(r_idx);
    // Newton: y <- (y + u/y) / 2
    padic::Elem half = fld.inv(fld.from_int(2));
    long goal = fld.prec();
    for (long t = 1; t < goal; t *= 2) y = fld.mul(half, fld.add(y, fld.div(u, y)));
    y = fld.mul(half, fld.add(y, fld.div(u, y)));
    if (*v != 0) y = fld.shift_pi(y, *v / 2);
    return y;
}

}  // namespace toric::quadext
