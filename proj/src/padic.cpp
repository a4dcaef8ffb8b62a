#include "toric/padic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace toric::padic {

namespace {

long vp_int(const Int& a, const Int& p, long cap) {
    if (a == 0) return cap;
    Int x = a;
    long v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

Rot QpNum::frac(const Int& p) const {
    if (pshift >= 0 || c == 0) return Rot(0, 1);
    Int den = pow_int(p, static_cast<unsigned long>(-pshift));
    return Rot(mod_floor(c, den), den);
}

Int det_int(const std::vector<std::vector<Int>>& m) {
    // subset DP over columns; exact integer arithmetic
    std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<Int> dp(std::size_t(1) << n, 0);
    dp[0] = 1;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        if (dp[mask] == 0) continue;
        std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == n) continue;
        int sign = 1;
        for (std::size_t col = 0; col < n; ++col) {
            if (mask & (std::size_t(1) << col)) continue;
            if (m[row][col] != 0) dp[mask | (std::size_t(1) << col)] += sign * dp[mask] * m[row][col];
            sign = -sign;
        }
    }
    return dp[(std::size_t(1) << n) - 1];
}

Field::Field(Int p, int f, std::vector<std::vector<Int>> eis, int precision)
    : p_(std::move(p)), f_(f), n_(precision), eis_(std::move(eis)) {
    if (p_ == 2) throw err("PrimeTwoUnsupported", "p = 2 is not supported by the p-adic core");
    if (!is_prime(p_)) throw err("NotPrime", "p must be prime");
    if (p_ > 1000000) throw err("Unsupported", "p too large for desk scale");
    if (f_ < 1 || f_ > 8) throw err("Unsupported", "unramified degree out of range");
    if (n_ < 1) throw err("Unsupported", "precision must be >= 1");
    if (eis_.size() < 2) throw err("NotEisenstein", "Eisenstein polynomial must have degree >= 1");
    e_ = static_cast<int>(eis_.size()) - 1;
    if (e_ > 8) throw err("Unsupported", "ramification degree out of range");
    d_ = e_ * f_;
    q_ = pow_int(p_, static_cast<unsigned long>(f_));
    if (q_ > 1000000) throw err("Unsupported", "residue field too large for desk scale");

    for (auto& coef : eis_) {
        if (coef.size() != static_cast<std::size_t>(f_))
            throw err("NotEisenstein", "Eisenstein coefficients must be vectors over the unramified subfield");
    }
    // monic
    if (eis_[e_][0] != 1 ||
        !std::all_of(eis_[e_].begin() + 1, eis_[e_].end(), [](const Int& c) { return c == 0; }))
        throw err("NotEisenstein", "Eisenstein polynomial must be monic");
    // Eisenstein criterion over U: v(E_i) >= 1 for i < e, v(E_0) = 1
    for (int i = 0; i < e_; ++i)
        for (const Int& c : eis_[i])
            if (mod_floor(c, p_) != 0)
                throw err("NotEisenstein", "non-leading coefficients must have positive valuation");
    bool e0_exact = false;
    for (const Int& c : eis_[0])
        if (mod_floor(c / p_, p_) != 0) e0_exact = true;
    if (!e0_exact) throw err("NotEisenstein", "constant coefficient must have valuation exactly 1");

    std::vector<std::int64_t> gsmall = Fq::find_irreducible(static_cast<std::int64_t>(p_), f_);
    g_.assign(gsmall.begin(), gsmall.end());
    res_ = std::make_unique<Fq>(static_cast<std::int64_t>(p_), gsmall);

    init_tables();
}

void Field::init_tables() {
    // w = pi^e / p (an integral unit): pi^e = -sum E_i pi^i, all E_i = p * (integral)
    std::vector<Int> w(static_cast<std::size_t>(d_), 0);
    for (int j = 0; j < e_; ++j)
        for (int i = 0; i < f_; ++i) w[slot(i, j)] = -eis_[j][i] / p_;
    long rel = ceil_div(n_ + 2 * e_ + 4, 1);  // generous working precision
    std::vector<Int> winv = unit_inv_vec(w, rel);
    // p / pi = pi^{e-1} * w^{-1}
    if (e_ == 1) {
        p_over_pi_ = winv;
    } else {
        std::vector<Int> pie1(static_cast<std::size_t>(d_), 0);
        pie1[slot(0, e_ - 1)] = 1;
        p_over_pi_ = raw_mul(pie1, winv);
    }
    reduce_vec(p_over_pi_, n_ + 2 * e_ + 4);

    if (e_ > 1) {
        std::vector<std::vector<Int>> sub_eis(2);
        sub_eis[0].assign(static_cast<std::size_t>(f_), 0);
        sub_eis[0][0] = -p_;
        sub_eis[1].assign(static_cast<std::size_t>(f_), 0);
        sub_eis[1][0] = 1;
        unram_ = std::make_shared<Field>(p_, f_, sub_eis, ceil_div(n_, e_) + 2);
    }

    // different exponent: v(E'(pi)) for the Eisenstein step (0 when e = 1)
    if (e_ == 1) {
        different_ = 0;
    } else {
        Elem acc = zero();
        Elem pi = uniformizer();
        for (int i = 1; i <= e_; ++i) {
            std::vector<Int> ci(static_cast<std::size_t>(d_), 0);
            for (int t = 0; t < f_; ++t) ci[slot(t, 0)] = eis_[i][t] * i;
            Elem term = mul(from_coeffs(ci), pow_i(pi, i - 1));
            acc = add(acc, term);
        }
        auto v = val(acc);
        if (!v) throw err("PrecisionExhausted", "cannot certify the different at this precision");
        different_ = *v;
    }

    // norm of pi down to Q_p
    norm_pi_ = [&] {
        Elem pi = uniformizer();
        auto mm = mult_matrix(pi);
        Int dd = det_int(mm);
        QpNum r;
        r.c = dd;
        r.pshift = 0;
        r.known_rel = ceil_div(n_, e_);
        return r;
    }();

    // canonical non-residue: smallest positive integer lift when one exists
    // (f odd); otherwise the first residue index whose class is a non-square.
    nonres_ = [&]() -> Elem {
        if (f_ % 2 == 1) {
            for (Int c = 2; c < p_; ++c) {
                Fq::El r = res_->from_int(static_cast<std::int64_t>(c));
                if (!res_->is_square(r)) return from_int(c);
            }
        }
        for (std::int64_t idx = 1; idx < static_cast<std::int64_t>(q_); ++idx) {
            Fq::El r = res_->from_index(idx);
            if (res_->is_zero(r)) continue;
            if (!res_->is_square(r)) return residue_lift(idx);
        }
        throw err("Internal", "no residue non-square found");
    }();
}

std::shared_ptr<const Field> Field::make_qp(const Int& p, int precision) {
    return make_unramified(p, 1, precision);
}

std::shared_ptr<const Field> Field::make_unramified(const Int& p, int f, int precision) {
    std::vector<std::vector<Int>> eis(2);
    eis[0].assign(static_cast<std::size_t>(f), 0);
    eis[0][0] = -p;
    eis[1].assign(static_cast<std::size_t>(f), 0);
    eis[1][0] = 1;
    return std::make_shared<Field>(p, f, std::move(eis), precision);
}

std::shared_ptr<const Field> Field::make_eisenstein(const Int& p, int f,
                                                    const std::vector<Int>& eis_int,
                                                    int precision) {
    std::vector<std::vector<Int>> eis(eis_int.size());
    for (std::size_t i = 0; i < eis_int.size(); ++i) {
        eis[i].assign(static_cast<std::size_t>(f), 0);
        eis[i][0] = eis_int[i];
    }
    return std::make_shared<Field>(p, f, std::move(eis), precision);
}

// ----- raw vector arithmetic -----

std::vector<Int> Field::raw_add(const std::vector<Int>& a, const std::vector<Int>& b) const {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::vector<Int> Field::raw_mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
    // polynomial in pi with U-coefficients; U-coefficients are polys in w mod g
    int fl = f_, el = e_;
    auto umul = [&](const Int* x, const Int* y, std::vector<Int>& out) {
        // out (length 2f-1) += x * y as polynomials in w
        for (int i = 0; i < fl; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < fl; ++j)
                if (y[j] != 0) out[i + j] += x[i] * y[j];
        }
    };
    // pi-convolution
    std::vector<std::vector<Int>> conv(2 * el - 1, std::vector<Int>(2 * fl - 1, 0));
    for (int j1 = 0; j1 < el; ++j1)
        for (int j2 = 0; j2 < el; ++j2) umul(&a[slot(0, j1)], &b[slot(0, j2)], conv[j1 + j2]);
    // reduce w-degree by g (monic, integer coefficients)
    auto wreduce = [&](std::vector<Int>& poly) {
        for (int dg = static_cast<int>(poly.size()) - 1; dg >= fl; --dg) {
            Int c = poly[dg];
            if (c == 0) continue;
            poly[dg] = 0;
            for (int i = 0; i < fl; ++i) poly[dg - fl + i] -= c * g_[i];
        }
        poly.resize(fl);
    };
    for (auto& poly : conv) wreduce(poly);
    // reduce pi-degree by E (monic, U-coefficients)
    for (int dg = 2 * el - 2; dg >= el; --dg) {
        bool nonzero = std::any_of(conv[dg].begin(), conv[dg].end(),
                                   [](const Int& c) { return c != 0; });
        if (!nonzero) continue;
        std::vector<Int> c = conv[dg];
        std::fill(conv[dg].begin(), conv[dg].end(), Int(0));
        for (int i = 0; i < el; ++i) {
            // conv[dg-e+i] -= c * E_i  (U-multiplication)
            std::vector<Int> prod(2 * fl - 1, 0);
            umul(c.data(), eis_[i].data(), prod);
            wreduce(prod);
            for (int t = 0; t < fl; ++t) conv[dg - el + i][t] -= prod[t];
        }
    }
    std::vector<Int> r(static_cast<std::size_t>(d_), 0);
    for (int j = 0; j < el; ++j)
        for (int i = 0; i < fl; ++i) r[slot(i, j)] = conv[j][i];
    return r;
}

void Field::reduce_vec(std::vector<Int>& v, long rel_prec) const {
    for (int j = 0; j < e_; ++j) {
        long mp = rel_prec <= j ? 0 : ceil_div(rel_prec - j, e_);
        for (int i = 0; i < f_; ++i) {
            Int& c = v[slot(i, j)];
            if (mp <= 0) {
                c = 0;
            } else {
                c = mod_floor(c, pow_int(p_, static_cast<unsigned long>(mp)));
            }
        }
    }
}

std::optional<long> Field::raw_val(const std::vector<Int>& v, long cap) const {
    long best = cap;
    for (int j = 0; j < e_; ++j)
        for (int i = 0; i < f_; ++i) {
            const Int& c = v[slot(i, j)];
            if (c == 0) continue;
            long vv = e_ * vp_int(c, p_, ceil_div(cap, e_) + 1) + j;
            best = std::min(best, vv);
        }
    if (best >= cap) return std::nullopt;
    return best;
}

std::vector<Int> Field::div_pi_exact(std::vector<Int> v, long t) const {
    for (long s = 0; s < t; ++s) {
        std::vector<Int> u0p(static_cast<std::size_t>(d_), 0);
        std::vector<Int> rest(static_cast<std::size_t>(d_), 0);
        for (int i = 0; i < f_; ++i) {
            if (v[slot(i, 0)] % p_ != 0)
                throw err("Internal", "div_pi_exact: vector not divisible by pi");
            u0p[slot(i, 0)] = v[slot(i, 0)] / p_;
        }
        for (int j = 1; j < e_; ++j)
            for (int i = 0; i < f_; ++i) rest[slot(i, j - 1)] = v[slot(i, j)];
        std::vector<Int> term = raw_mul(u0p, p_over_pi_);
        v = raw_add(rest, term);
    }
    return v;
}

Elem Field::canon(std::vector<Int> v, int shift, long known) const {
    known = std::min<long>(known, n_);
    if (known <= shift) {
        // nothing is known; canonical zero at that precision
        Elem z;
        z.c.assign(static_cast<std::size_t>(d_), 0);
        z.shift = 0;
        z.known = std::max(known, 0L);
        return z;
    }
    reduce_vec(v, known - shift);
    auto rv = raw_val(v, known - shift);
    if (!rv) {
        Elem z;
        z.c.assign(static_cast<std::size_t>(d_), 0);
        z.shift = 0;
        z.known = known;
        return z;
    }
    if (shift < 0) {
        long t = std::min<long>(*rv, -shift);
        if (t > 0) {
            v = div_pi_exact(std::move(v), t);
            shift += static_cast<int>(t);
            reduce_vec(v, known - shift);
        }
    }
    Elem r;
    r.c = std::move(v);
    r.shift = shift;
    r.known = known;
    return r;
}

std::vector<Int> Field::unit_inv_vec(const std::vector<Int>& u, long rel_prec) const {
    // residue inverse, then Newton y <- y(2 - u y)
    Fq::El r0 = res_->zero();
    for (int i = 0; i < f_; ++i) r0[i] = static_cast<std::int64_t>(mod_floor(u[slot(i, 0)], p_));
    if (res_->is_zero(r0)) throw err("DivisionByNearZero", "inverse of a non-unit vector");
    Fq::El ri = res_->inv(r0);
    std::vector<Int> y(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < f_; ++i) y[slot(i, 0)] = ri[i];
    long t = 1;
    while (t < rel_prec) {
        t *= 2;
        std::vector<Int> uy = raw_mul(u, y);
        // 2 - uy
        for (auto& c : uy) c = -c;
        uy[slot(0, 0)] += 2;
        y = raw_mul(y, uy);
        reduce_vec(y, std::min(t, rel_prec));
    }
    return y;
}

// ----- element constructors -----

Elem Field::zero() const {
    Elem z;
    z.c.assign(static_cast<std::size_t>(d_), 0);
    z.shift = 0;
    z.known = n_;
    return z;
}

Elem Field::one() const { return from_int(1); }

Elem Field::from_int(const Int& a) const {
    std::vector<Int> v(static_cast<std::size_t>(d_), 0);
    v[slot(0, 0)] = a;
    long extra = a == 0 ? 0 : e_ * vp_int(a, p_, ceil_div(n_, e_) + 2);
    return canon(std::move(v), 0, n_ + extra);
}

Elem Field::from_rational(const Int& num, const Int& den) const {
    if (den == 0) throw err("DivisionByNearZero", "zero denominator");
    return div(from_int(num), from_int(den));
}

Elem Field::from_coeffs(const std::vector<Int>& c) const {
    if (c.size() != static_cast<std::size_t>(d_))
        throw err("Internal", "from_coeffs: wrong length");
    return canon(c, 0, n_);
}

Elem Field::uniformizer() const {
    std::vector<Int> v(static_cast<std::size_t>(d_), 0);
    if (e_ > 1) {
        v[slot(0, 1)] = 1;
    } else {
        for (int i = 0; i < f_; ++i) v[slot(i, 0)] = -eis_[0][i];
    }
    return canon(std::move(v), 0, n_ + e_);
}

Elem Field::gen_w() const {
    std::vector<Int> v(static_cast<std::size_t>(d_), 0);
    if (f_ > 1)
        v[slot(1, 0)] = 1;
    else
        v[slot(0, 0)] = 1;
    return canon(std::move(v), 0, n_);
}

// ----- arithmetic -----

Elem Field::add(const Elem& a, const Elem& b) const {
    int s = std::min(a.shift, b.shift);
    long known = std::min(a.known, b.known);
    std::vector<Int> va = a.c, vb = b.c;
    auto lift = [&](std::vector<Int>& v, int from) {
        long t = from - s;
        if (t == 0) return;
        std::vector<Int> piv(static_cast<std::size_t>(d_), 0);
        if (e_ > 1)
            piv[slot(0, 1)] = 1;
        else
            for (int i = 0; i < f_; ++i) piv[slot(i, 0)] = -eis_[0][i];
        for (long k = 0; k < t; ++k) v = raw_mul(v, piv);
    };
    lift(va, a.shift);
    lift(vb, b.shift);
    return canon(raw_add(va, vb), s, known);
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::neg(const Elem& a) const {
    Elem r = a;
    for (auto& c : r.c) c = -c;
    return canon(std::move(r.c), r.shift, r.known);
}

Elem Field::mul(const Elem& a, const Elem& b) const {
    auto va = val(a), vb = val(b);
    long la = va.value_or(a.known);
    long lb = vb.value_or(b.known);
    long known = std::min(a.known + lb, b.known + la);
    return canon(raw_mul(a.c, b.c), a.shift + b.shift, known);
}

Elem Field::inv(const Elem& a) const {
    auto v = val(a);
    if (!v) throw err("DivisionByNearZero", "inverse of an element indistinguishable from 0");
    long t = *v - a.shift;  // valuation of the vector part
    std::vector<Int> u = a.c;
    if (t > 0) u = div_pi_exact(std::move(u), t);
    long rel = a.known - *v;  // relative precision of a
    std::vector<Int> y = unit_inv_vec(u, rel);
    return canon(std::move(y), -static_cast<int>(*v), rel - *v);
}

Elem Field::div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

Elem Field::pow_i(Elem a, Int k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    Elem r = one();
    while (k > 0) {
        if ((k & 1) != 0) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

// ----- structure -----

std::optional<long> Field::val(const Elem& a) const {
    auto rv = raw_val(a.c, a.known - a.shift);
    if (!rv) return std::nullopt;
    return *rv + a.shift;
}

bool Field::eq(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

Elem Field::reduce_known(Elem a, long k) const {
    a.known = std::min(a.known, k);
    return canon(std::move(a.c), a.shift, a.known);
}

Elem Field::shift_pi(const Elem& a, long t) const {
    int s = a.shift + static_cast<int>(t);
    std::vector<Int> v = a.c;
    long known = a.known + t;
    if (s > 0) {
        std::vector<Int> piv(static_cast<std::size_t>(d_), 0);
        if (e_ > 1)
            piv[slot(0, 1)] = 1;
        else
            for (int i = 0; i < f_; ++i) piv[slot(i, 0)] = -eis_[0][i];
        for (int k = 0; k < s; ++k) v = raw_mul(v, piv);
        s = 0;
    }
    return canon(std::move(v), s, known);
}

std::int64_t Field::residue_index(const Elem& a) const {
    if (a.shift < 0) throw err("Internal", "residue of a non-integral element");
    Fq::El r = res_->zero();
    for (int i = 0; i < f_; ++i) r[i] = static_cast<std::int64_t>(mod_floor(a.c[slot(i, 0)], p_));
    return res_->index(r);
}

Elem Field::residue_lift(std::int64_t idx) const {
    Fq::El r = res_->from_index(idx);
    std::vector<Int> v(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < f_; ++i) v[slot(i, 0)] = r[i];
    return canon(std::move(v), 0, n_);
}

Elem Field::teichmuller(const Elem& unit) const {
    auto v = val(unit);
    if (!v || *v != 0) throw err("Internal", "teichmuller of a non-unit");
    Elem y = unit;
    for (long it = 0; it <= n_ + 2; ++it) {
        Elem yq = pow_i(y, q_);
        if (eq(yq, y)) return y;
        y = yq;
    }
    throw err("PrecisionExhausted", "teichmuller iteration did not stabilize");
}

std::vector<std::vector<Int>> Field::mult_matrix(const Elem& a) const {
    if (a.shift != 0) throw err("Internal", "mult_matrix wants an integral element");
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(d_),
                                    std::vector<Int>(static_cast<std::size_t>(d_), 0));
    for (int k = 0; k < d_; ++k) {
        std::vector<Int> basis(static_cast<std::size_t>(d_), 0);
        basis[k] = 1;
        std::vector<Int> col = raw_mul(a.c, basis);
        reduce_vec(col, a.known);
        for (int r = 0; r < d_; ++r) m[r][k] = col[r];
    }
    return m;
}

namespace {
// a = p^m * integral;  returns m and the integral element
std::pair<Elem, long> make_p_integral(const Field& fld, const Elem& a) {
    if (a.shift >= 0) return {a, 0};
    long m = (-(long)a.shift + fld.e() - 1) / fld.e();
    Elem ai = fld.mul(a, fld.from_int(pow_int(fld.p(), static_cast<unsigned long>(m))));
    if (ai.shift != 0) throw err("Internal", "make_p_integral failed");
    return {ai, m};
}
}  // namespace

QpNum Field::trace_to_qp(const Elem& a) const {
    auto [ai, m] = make_p_integral(*this, a);
    auto mm = mult_matrix(ai);
    Int tr = 0;
    for (int i = 0; i < d_; ++i) tr += mm[i][i];
    QpNum r;
    r.pshift = -m;
    r.known_rel = std::max(1L, ai.known / e_);
    r.c = mod_floor(tr, pow_int(p_, static_cast<unsigned long>(r.known_rel)));
    return r;
}

QpNum Field::norm_to_qp(const Elem& a) const {
    auto v = val(a);
    if (!v) throw err("PrecisionExhausted", "norm of an element indistinguishable from 0");
    auto [ai, m] = make_p_integral(*this, a);
    Int dd = det_int(mult_matrix(ai));
    QpNum r;
    r.pshift = -m * d_;
    r.known_rel = std::max(1L, ai.known / e_);
    r.c = mod_floor(dd, pow_int(p_, static_cast<unsigned long>(r.known_rel)));
    return r;
}

const Field& Field::unram_subfield() const { return e_ == 1 ? *this : *unram_; }

Elem Field::embed_unram(const Elem& u) const {
    if (e_ == 1) return u;
    const Field& uf = *unram_;
    std::vector<Int> v(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < f_; ++i) v[slot(i, 0)] = u.c[i];
    return canon(std::move(v), e_ * u.shift, e_ * u.known);
}

std::vector<Elem> Field::unram_coords(const Elem& a) const {
    const Field& uf = unram_subfield();
    auto [ai, m] = make_p_integral(*this, a);
    std::vector<Elem> out;
    for (int j = 0; j < e_; ++j) {
        std::vector<Int> uc(static_cast<std::size_t>(f_), 0);
        for (int i = 0; i < f_; ++i) uc[i] = ai.c[slot(i, j)];
        Elem u = uf.from_coeffs(uc);
        if (m) u = uf.div(u, uf.from_int(pow_int(p_, static_cast<unsigned long>(m))));
        out.push_back(u);
    }
    return out;
}

Elem Field::trace_to_unram(const Elem& a) const {
    if (e_ == 1) return a;
    const Field& uf = *unram_;
    auto [ai, m] = make_p_integral(*this, a);
    // trace = sum of diagonal of the e x e matrix of mul-by-ai over U
    Elem tr = uf.zero();
    Elem pik = one();
    for (int j = 0; j < e_; ++j) {
        std::vector<Int> basis(static_cast<std::size_t>(d_), 0);
        basis[slot(0, j)] = 1;
        std::vector<Int> col = raw_mul(ai.c, basis);
        reduce_vec(col, ai.known);
        std::vector<Int> uc(static_cast<std::size_t>(f_), 0);
        for (int i = 0; i < f_; ++i) uc[i] = col[slot(i, j)];
        tr = uf.add(tr, uf.from_coeffs(uc));
    }
    if (m) tr = uf.div(tr, uf.from_int(pow_int(p_, static_cast<unsigned long>(m))));
    return tr;
}

Elem Field::norm_to_unram(const Elem& a) const {
    if (e_ == 1) return a;
    const Field& uf = *unram_;
    auto v = val(a);
    if (!v) throw err("PrecisionExhausted", "norm of an element indistinguishable from 0");
    auto [ai, m] = make_p_integral(*this, a);
    // e x e matrix over U of multiplication by ai on the basis {pi^j}
    std::vector<std::vector<Elem>> mm(static_cast<std::size_t>(e_),
                                      std::vector<Elem>(static_cast<std::size_t>(e_)));
    for (int j = 0; j < e_; ++j) {
        std::vector<Int> basis(static_cast<std::size_t>(d_), 0);
        basis[slot(0, j)] = 1;
        std::vector<Int> col = raw_mul(ai.c, basis);
        reduce_vec(col, ai.known);
        for (int r = 0; r < e_; ++r) {
            std::vector<Int> uc(static_cast<std::size_t>(f_), 0);
            for (int i = 0; i < f_; ++i) uc[i] = col[slot(i, r)];
            mm[r][j] = uf.from_coeffs(uc);
        }
    }
    // cofactor expansion (exact ring operations)
    std::vector<int> cols(static_cast<std::size_t>(e_));
    for (int i = 0; i < e_; ++i) cols[i] = i;
    std::function<Elem(int, std::vector<int>&)> detr = [&](int row, std::vector<int>& cs) -> Elem {
        if (cs.empty()) return uf.one();
        Elem acc = uf.zero();
        for (std::size_t t = 0; t < cs.size(); ++t) {
            int c = cs[t];
            std::vector<int> rest;
            for (std::size_t s = 0; s < cs.size(); ++s)
                if (s != t) rest.push_back(cs[s]);
            Elem sub = detr(row + 1, rest);
            Elem term = uf.mul(mm[row][c], sub);
            if (t % 2 == 1) term = uf.neg(term);
            acc = uf.add(acc, term);
        }
        return acc;
    };
    Elem dd = detr(0, cols);
    if (m) {
        Int pm = pow_int(p_, static_cast<unsigned long>(m * e_));
        dd = uf.div(dd, uf.from_int(pm));
    }
    return dd;
}

Elem Field::from_qpnum(const QpNum& x) const {
    Int num = x.c;
    Int den = 1;
    if (x.pshift >= 0)
        num *= pow_int(p_, static_cast<unsigned long>(x.pshift));
    else
        den = pow_int(p_, static_cast<unsigned long>(-x.pshift));
    Elem r = from_rational(num, den);
    // carry the p-adic precision of the source value
    return reduce_known(std::move(r), e_ * (x.pshift + x.known_rel));
}

std::string Field::to_str(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i) os << ",";
        os << a.c[i].str();
    }
    os << "] * pi^" << a.shift << " (mod pi^" << a.known << ")";
    return os.str();
}

}  // namespace toric::padic
