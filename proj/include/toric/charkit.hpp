#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "toric/unitgroup.hpp"

namespace toric {

// A character value: exact rotation times an optional numeric unit-modulus
// factor.  The numeric part is only ever attached to uniformizer images of
// localized global characters; the local corpus stays exact.
struct CVal {
    Rot rot;
    std::complex<double> extra{1.0, 0.0};

    std::complex<double> cx() const {
        double a = rot.angle();
        return std::complex<double>(std::cos(a), std::sin(a)) * extra;
    }
    CVal operator+(const CVal& o) const { return {rot + o.rot, extra * o.extra}; }
    CVal operator-() const { return {-rot, std::conj(extra)}; }
    bool exact() const { return std::abs(extra - std::complex<double>(1.0, 0.0)) < 1e-12; }
};

// Finite-level multiplicative character of M^x/(1 + pi^k), given by rotation
// numbers on the unit-group presentation (plus a value at the uniformizer).
template <class F>
struct MulChar {
    std::shared_ptr<const UnitGroup<F>> grp;
    Rot pi_rot;
    std::complex<double> pi_extra{1.0, 0.0};
    Rot zeta_rot;
    std::vector<Rot> basis_rots;

    static MulChar trivial(std::shared_ptr<const UnitGroup<F>> g) {
        MulChar c;
        c.grp = std::move(g);
        c.basis_rots.assign(c.grp->orders().size(), Rot());
        return c;
    }

    void validate() const {
        if (!(zeta_rot * grp->zeta_order()).is_zero())
            throw err("LevelMismatch", "character order incompatible with the Teichmueller generator");
        for (std::size_t i = 0; i < basis_rots.size(); ++i)
            if (!(basis_rots[i] * grp->orders()[i]).is_zero())
                throw err("LevelMismatch", "character order incompatible with a principal-unit generator");
    }

    CVal value(const typename F::Elem& x) const {
        DLog<F> d = grp->dlog(x);
        Rot r = pi_rot * d.pi_exp + zeta_rot * d.zeta_exp;
        for (std::size_t i = 0; i < basis_rots.size(); ++i) r = r + basis_rots[i] * d.basis_exps[i];
        std::complex<double> ex(1.0, 0.0);
        if (std::abs(pi_extra - std::complex<double>(1.0, 0.0)) > 1e-15) {
            long e = static_cast<long>(d.pi_exp);
            ex = std::pow(pi_extra, static_cast<double>(e));
        }
        return {r, ex};
    }

    MulChar times(const MulChar& o) const {
        MulChar r = *this;
        r.pi_rot = pi_rot + o.pi_rot;
        r.pi_extra = pi_extra * o.pi_extra;
        r.zeta_rot = zeta_rot + o.zeta_rot;
        for (std::size_t i = 0; i < basis_rots.size(); ++i)
            r.basis_rots[i] = basis_rots[i] + o.basis_rots[i];
        return r;
    }

    MulChar inverse() const {
        MulChar r = *this;
        r.pi_rot = -pi_rot;
        r.pi_extra = std::conj(pi_extra);
        r.zeta_rot = -zeta_rot;
        for (auto& b : r.basis_rots) b = -b;
        return r;
    }

    MulChar power(long n) const {
        MulChar r = trivial(grp);
        MulChar base = n < 0 ? inverse() : *this;
        long m = n < 0 ? -n : n;
        for (long i = 0; i < m; ++i) r = r.times(base);
        return r;
    }

    bool unit_part_trivial() const {
        if (!zeta_rot.is_zero()) return false;
        for (const auto& b : basis_rots)
            if (!b.is_zero()) return false;
        return true;
    }

    bool is_trivial() const {
        return unit_part_trivial() && pi_rot.is_zero() &&
               std::abs(pi_extra - std::complex<double>(1.0, 0.0)) < 1e-12;
    }

    // conductor exponent a(chi): least a with chi trivial on 1 + pi^a
    int conductor() const {
        int a = 0;
        const auto& raws = grp->raw_gens();
        for (std::size_t j = 0; j < raws.size(); ++j) {
            std::vector<Int> be = grp->raw_to_basis(j);
            Rot r;
            for (std::size_t i = 0; i < be.size(); ++i) r = r + basis_rots[i] * be[i];
            if (!r.is_zero()) a = std::max(a, grp->raw_level(j) + 1);
        }
        if (a == 0 && !zeta_rot.is_zero()) a = 1;
        return a;
    }
};

// Additive character psi(x) = e^{2 pi i frac(tr_{M/Q_p}(gamma x))}.
template <class F>
struct AddChar {
    const F* fld = nullptr;
    typename F::Elem gamma;
    long level = 0;  // trivial on pi^level, nontrivial on pi^{level-1}

    static AddChar standard(const F& f) {
        AddChar psi;
        psi.fld = &f;
        psi.gamma = f.one();
        psi.level = -f.different_exp();
        return psi;
    }

    static AddChar twisted(const F& f, const typename F::Elem& g) {
        AddChar psi;
        psi.fld = &f;
        psi.gamma = g;
        auto v = f.val(g);
        if (!v) throw err("PrecisionExhausted", "additive character with near-zero scale");
        psi.level = -*v - f.different_exp();
        return psi;
    }

    Rot value(const typename F::Elem& x) const { return fld->trace_rot(fld->mul(gamma, x)); }
};

// ---------------------------------------------------------------------------
// Character construction by linear algebra on presentations.
// ---------------------------------------------------------------------------

// Rows of the relation/restriction system for a unit group: coordinates are
// (pi, zeta, basis...).
template <class F>
std::vector<Int> dlog_row(const UnitGroup<F>& g, const typename F::Elem& x) {
    DLog<F> d = g.dlog(x);
    std::vector<Int> row;
    row.push_back(d.pi_exp);
    row.push_back(d.zeta_exp);
    for (const auto& e : d.basis_exps) row.push_back(e);
    return row;
}

// All finite-order characters of M^x/(1+pi^k) trivial on every element of
// `subgens` (the subgroup they generate must pin the uniformizer, which is
// automatic for the norm/base quotients used here).
template <class F>
std::vector<MulChar<F>> quotient_dual(std::shared_ptr<const UnitGroup<F>> grp,
                                      const std::vector<typename F::Elem>& subgens,
                                      std::size_t cap = 1 << 20) {
    const UnitGroup<F>& g = *grp;
    std::size_t r = 2 + g.orders().size();
    std::vector<std::vector<Int>> rows;
    {
        std::vector<Int> zr(r, 0);
        zr[1] = g.zeta_order();
        rows.push_back(zr);
        for (std::size_t i = 0; i < g.orders().size(); ++i) {
            std::vector<Int> br(r, 0);
            br[2 + i] = g.orders()[i];
            rows.push_back(br);
        }
        for (const auto& s : subgens) rows.push_back(dlog_row(g, s));
    }
    Int n = g.zeta_order();
    for (const Int& d : g.orders()) n = boost::multiprecision::lcm(n, d);
    n = n * 4;  // headroom for the pi coordinate pinned through subgroup rows
    // characters: x in (Q/Z)^r with rows . x = 0; x = y/n, R y = 0 mod n
    Snf s = smith_normal_form(rows);
    std::size_t k = rows.size();
    std::vector<Int> gchoices(r, 1);
    for (std::size_t i = 0; i < r; ++i) {
        Int di = i < k ? s.d[i][i] : 0;
        Int gg = di == 0 ? n : boost::multiprecision::gcd(di, n);
        gchoices[i] = gg;
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total *= static_cast<std::size_t>(gchoices[i]);
        if (total > cap) throw err("Unsupported", "dual group too large to enumerate");
    }
    std::vector<MulChar<F>> out;
    std::vector<Int> z(r, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t t = idx;
        for (std::size_t i = 0; i < r; ++i) {
            Int gg = gchoices[i];
            Int step = n / gg;
            z[i] = step * Int(static_cast<long>(t % static_cast<std::size_t>(gg)));
            t /= static_cast<std::size_t>(gg);
        }
        std::vector<Int> y(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) y[i] += s.v[i][j] * z[j];
        MulChar<F> c = MulChar<F>::trivial(grp);
        c.pi_rot = Rot(y[0], n);
        c.zeta_rot = Rot(y[1], n);
        for (std::size_t i = 0; i < g.orders().size(); ++i) c.basis_rots[i] = Rot(y[2 + i], n);
        c.validate();
        bool ok = true;
        for (const auto& sgen : subgens)
            if (!c.value(sgen).rot.is_zero()) {
                ok = false;
                break;
            }
        if (ok) out.push_back(std::move(c));
    }
    // dedupe (z -> character is injective, but the pi coordinate may wrap)
    std::vector<MulChar<F>> uniq;
    for (auto& c : out) {
        bool dup = false;
        for (const auto& u : uniq)
            if (u.pi_rot == c.pi_rot && u.zeta_rot == c.zeta_rot && u.basis_rots == c.basis_rots)
                dup = true;
        if (!dup) uniq.push_back(std::move(c));
    }
    return uniq;
}

// A character with prescribed rotation values on given elements (used to
// build splitting characters with a required restriction).  Torsion
// relations are enforced; returns the first solution deterministically.
template <class F>
MulChar<F> character_with_values(std::shared_ptr<const UnitGroup<F>> grp,
                                 const std::vector<typename F::Elem>& elems,
                                 const std::vector<Rot>& targets) {
    const UnitGroup<F>& g = *grp;
    std::size_t r = 2 + g.orders().size();
    std::vector<std::vector<Int>> rows;
    std::vector<Rot> rhs;
    {
        std::vector<Int> zr(r, 0);
        zr[1] = g.zeta_order();
        rows.push_back(zr);
        rhs.push_back(Rot());
        for (std::size_t i = 0; i < g.orders().size(); ++i) {
            std::vector<Int> br(r, 0);
            br[2 + i] = g.orders()[i];
            rows.push_back(br);
            rhs.push_back(Rot());
        }
        for (std::size_t i = 0; i < elems.size(); ++i) {
            rows.push_back(dlog_row(g, elems[i]));
            rhs.push_back(targets[i]);
        }
    }
    Int n = g.zeta_order();
    for (const Int& d : g.orders()) n = boost::multiprecision::lcm(n, d);
    for (const Rot& t : rhs) n = boost::multiprecision::lcm(n, t.den);
    n *= 2;
    std::vector<Int> c(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        c[i] = rhs[i].num * (n / rhs[i].den);
    std::vector<Int> y;
    if (!solve_linear_mod(rows, c, n, y))
        throw err("SplittingCharacterInvalid", "no character with the requested restriction");
    MulChar<F> ch = MulChar<F>::trivial(grp);
    ch.pi_rot = Rot(y[0], n);
    ch.zeta_rot = Rot(y[1], n);
    for (std::size_t i = 0; i < g.orders().size(); ++i) ch.basis_rots[i] = Rot(y[2 + i], n);
    ch.validate();
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (ch.value(elems[i]).rot != targets[i])
            throw err("SplittingCharacterInvalid", "restriction solve verification failed");
    return ch;
}

}  // namespace toric
