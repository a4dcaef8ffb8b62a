#pragma once

#include <complex>

#include "toric/charkit.hpp"
#include "toric/residue_ring.hpp"

namespace toric::chars {

struct GaussOpts {
    std::size_t max_terms = 2000000;
    int max_conductor = 4;
    bool parallel = true;
    bool use_kernel = true;  // false forces the exact-walk reference path
};

// Odometer description of the unit enumeration of O^x/(1+pi^a): generator
// elements, their orders, and the carry multipliers.
template <class F>
struct UnitWalk {
    std::vector<typename F::Elem> gens;   // position 0 = zeta, then basis
    std::vector<Int> sizes;               // digit sizes
    std::vector<typename F::Elem> carry;  // multiplier applied when digit t wraps

    explicit UnitWalk(const F& fld, const UnitGroup<F>& g) {
        gens.push_back(g.zeta());
        sizes.push_back(g.zeta_order());
        for (std::size_t i = 0; i < g.basis().size(); ++i) {
            gens.push_back(g.basis()[i]);
            sizes.push_back(g.orders()[i]);
        }
        // wrapping digit t: multiply by gens[t]^{-(sizes[t]-1)} (and the
        // caller then advances digit t+1 by one step)
        for (std::size_t t = 0; t < gens.size(); ++t)
            carry.push_back(fld.pow_i(gens[t], -(sizes[t] - 1)));
    }

    std::size_t total() const {
        std::size_t n = 1;
        for (const Int& s : sizes) n *= static_cast<std::size_t>(s);
        return n;
    }
};

// Exact-walk Gauss sum: sum over u in O^x/(1+pi^a) of
// chi^{-1}(u) psi0(u c), c = pi^{-(a+d)}; serial reference implementation.
template <class F>
std::complex<double> gauss_sum_ref(const F& fld, const MulChar<F>& chi, int a,
                                   const typename F::Elem& c) {
    UnitGroup<F> ga(fld, a);
    UnitWalk<F> walk(fld, ga);
    std::vector<Rot> gen_rots, carry_rots;
    for (std::size_t t = 0; t < walk.gens.size(); ++t) {
        gen_rots.push_back(-chi.value(walk.gens[t]).rot);
        carry_rots.push_back(-chi.value(walk.carry[t]).rot);
    }
    typename F::Elem u = fld.one();
    Rot rot;
    std::vector<Int> digits(walk.sizes.size(), 0);
    std::complex<double> acc(0.0, 0.0);
    std::size_t n = walk.total();
    for (std::size_t i = 0; i < n; ++i) {
        Rot phase = rot + fld.trace_rot(fld.mul(u, c));
        double ang = phase.angle();
        acc += std::complex<double>(std::cos(ang), std::sin(ang));
        // advance
        for (std::size_t t = 0; t < digits.size(); ++t) {
            if (++digits[t] < walk.sizes[t]) {
                u = fld.mul(u, walk.gens[t]);
                rot = rot + gen_rots[t];
                break;
            }
            digits[t] = 0;
            u = fld.mul(u, walk.carry[t]);
            rot = rot + carry_rots[t];
        }
    }
    return acc;
}

// Kernel Gauss sum on the int64 residue ring; parallelizes over index blocks.
template <class F>
std::complex<double> gauss_sum_kernel(const F& fld, const MulChar<F>& chi, int a,
                                      const typename F::Elem& c, bool parallel);

// Tate local epsilon factor at the central point.  The anchor is the trace
// character psi0 with gamma0 = pi^{a+d}; other additive characters reduce to
// it through the central-point twist law eps(chi, psi_gamma) = chi(gamma)
// eps(chi, psi0).
template <class F>
std::complex<double> tate_epsilon(const F& fld, const MulChar<F>& chi, const AddChar<F>& psi,
                                  const GaussOpts& opts = {}) {
    int a = chi.conductor();
    long d = fld.different_exp();
    CVal twist = chi.value(psi.gamma);
    if (a == 0) {
        CVal anchor = d == 0 ? CVal{} : chi.value(fld.pow_i(fld.uniformizer(), Int(d)));
        return (twist + anchor).cx();
    }
    if (a > opts.max_conductor)
        throw err("Unsupported", "conductor exponent beyond the configured maximum");
    typename F::Elem gamma0 = fld.pow_i(fld.uniformizer(), Int(a + d));
    CVal chig0 = chi.value(gamma0);
    typename F::Elem cinv = fld.inv(gamma0);
    {
        UnitGroup<F> probe(fld, a);
        if (probe.finite_order() > Int(static_cast<long>(opts.max_terms)))
            throw err("Unsupported", "Gauss sum exceeds the configured term budget");
    }
    std::complex<double> s = opts.use_kernel ? gauss_sum_kernel(fld, chi, a, cinv, opts.parallel)
                                             : gauss_sum_ref(fld, chi, a, cinv);
    double qa = std::pow(static_cast<double>(fld.q()), -0.5 * a);
    return (twist + chig0).cx() * qa * s;
}

// Archimedean Tate epsilon for chi(z) = (z/|z|)^n on C with psi_delta from
// delta = i t; pinned so that eps(0, delta) = 1 and the delta-flip law
// eps(n, -delta) = (-1)^n eps(n, delta) holds (see the zeta-integral oracle
// in the test suite).
int archimedean_epsilon(long n, int delta_sign);

// conductor, conjugate-duality flag, and the restriction to the base field
// of a character of a quadratic extension
struct CharAnalysis {
    int conductor = 0;
    bool conjugate_dual = false;
};

inline CharAnalysis character_analysis(const toric::quadext::QuadField& l,
                                       const MulChar<toric::quadext::QuadField>& chi) {
    CharAnalysis out;
    out.conductor = chi.conductor();
    out.conjugate_dual = true;
    auto dual_at = [&](const toric::quadext::QElem& g) {
        CVal v = chi.value(g);
        CVal w = chi.value(l.conj(g));
        return (v.rot + w.rot).is_zero() &&
               std::abs(v.extra * w.extra - std::complex<double>(1.0, 0.0)) < 1e-9;
    };
    out.conjugate_dual = dual_at(chi.grp->uniformizer()) && dual_at(chi.grp->zeta());
    for (const auto& b : chi.grp->basis())
        out.conjugate_dual = out.conjugate_dual && dual_at(b);
    return out;
}

// restriction of a K^x-character along the inclusion of the base field
inline MulChar<toric::padic::Field> restrict_to_base(
    const toric::quadext::QuadField& l, const MulChar<toric::quadext::QuadField>& chi,
    std::shared_ptr<const UnitGroup<toric::padic::Field>> gbase) {
    MulChar<toric::padic::Field> out = MulChar<toric::padic::Field>::trivial(gbase);
    auto setv = [&](const toric::padic::Elem& g, Rot& slot, std::complex<double>* extra) {
        CVal v = chi.value(l.from_base(g));
        slot = v.rot;
        if (extra) *extra = v.extra;
    };
    setv(gbase->uniformizer(), out.pi_rot, &out.pi_extra);
    std::complex<double> dummy;
    setv(gbase->zeta(), out.zeta_rot, nullptr);
    for (std::size_t i = 0; i < gbase->basis().size(); ++i)
        setv(gbase->basis()[i], out.basis_rots[i], nullptr);
    out.validate();
    return out;
}

}  // namespace toric::chars

// implementation of the kernel path
#include "toric/gauss_impl.hpp"
