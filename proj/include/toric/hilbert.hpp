#pragma once

#include "toric/padic.hpp"

namespace toric {

// Euler criterion on the residue of a unit; works for any field-like type
// exposing pow_i / residue_index.
template <class F>
bool residue_is_square(const F& fld, const typename F::Elem& unit) {
    auto t = fld.pow_i(unit, (fld.q() - 1) / 2);
    return fld.residue_index(t) == fld.residue_index(fld.one());
}

enum class SquareClass { One, U, Pi, UPi };

inline const char* square_class_name(SquareClass c) {
    switch (c) {
        case SquareClass::One: return "1";
        case SquareClass::U: return "u";
        case SquareClass::Pi: return "pi";
        default: return "u*pi";
    }
}

struct SquareClassResult {
    SquareClass cls;
    padic::Elem rep;  // canonical representative in {1, u, pi, u*pi}
};

// Canonical square class of x in M^x/(M^x)^2 for odd residue characteristic.
// The residue test certifies squareness by Hensel's lemma.
inline SquareClassResult square_class(const padic::Field& fld, const padic::Elem& x) {
    auto v = fld.val(x);
    if (!v) throw err("PrecisionExhausted", "square class of an element indistinguishable from 0");
    padic::Elem u = fld.shift_pi(x, -*v);
    bool odd_v = mod_floor(Int(*v), 2) == 1;
    bool nonsq = !residue_is_square(fld, u);
    padic::Elem rep = fld.one();
    if (nonsq) rep = fld.nonresidue();
    if (odd_v) rep = fld.mul(rep, fld.uniformizer());
    SquareClass cls = odd_v ? (nonsq ? SquareClass::UPi : SquareClass::Pi)
                            : (nonsq ? SquareClass::U : SquareClass::One);
    return {cls, rep};
}

// Tame Hilbert symbol for odd residue characteristic:
//   (a, b) = eta((-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}),
// eta the quadratic residue character.  Exponents are reduced to the square
// classes first, so only 0/1 powers occur.
template <class F>
int hilbert_symbol(const F& fld, const typename F::Elem& a, const typename F::Elem& b) {
    auto va = fld.val(a), vb = fld.val(b);
    if (!va || !vb) throw err("PrecisionExhausted", "Hilbert symbol of a near-zero element");
    long ra = mod_floor(Int(*va), 2) == 1 ? 1 : 0;
    long rb = mod_floor(Int(*vb), 2) == 1 ? 1 : 0;
    auto ua = fld.shift_pi(a, -*va);  // unit parts
    auto ub = fld.shift_pi(b, -*vb);
    // the pi powers inside a^{v(b)} b^{-v(a)} cancel, leaving a unit
    typename F::Elem u = fld.one();
    if (ra && rb) u = fld.neg(u);
    if (rb) u = fld.mul(u, ua);
    if (ra) u = fld.mul(u, fld.inv(ub));
    return residue_is_square(fld, u) ? 1 : -1;
}

}  // namespace toric
