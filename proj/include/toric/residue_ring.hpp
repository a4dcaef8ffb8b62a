#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "toric/padic.hpp"
#include "toric/quadext.hpp"

namespace toric {

// Flat int64 model of O_M / pi^m for a field-like M of small degree: slot
// coefficients on the adapted power basis, each reduced modulo its own
// p-power.  Built once from exact field arithmetic, then all kernel loops
// run on plain machine words.  This is the compute core shared by the
// solubility oracle and the Gauss-sum kernels; a serial reference path is
// kept next to each parallel loop.
struct ResidueRing {
    static constexpr int kMaxDim = 8;
    using El = std::array<std::int64_t, kMaxDim>;

    std::int64_t p = 0;
    int m = 0;       // pi-adic modulus exponent
    int dim = 0;     // number of coordinate slots
    std::array<std::int64_t, kMaxDim> slot_mod{};  // p^{k_s}
    std::array<int, kMaxDim> slot_val{};           // pi-valuation of basis slot
    // structure constants: tab[(i*dim+j)*kMaxDim + s]
    std::vector<std::int64_t> tab;
    std::size_t size = 1;  // prod slot_mod = |O/pi^m|

    El zero() const { return El{}; }
    El one() const {
        El e{};
        e[0] = 1;
        return e;
    }

    void add_inplace(El& a, const El& b) const {
        for (int i = 0; i < dim; ++i) {
            a[i] += b[i];
            if (a[i] >= slot_mod[i]) a[i] -= slot_mod[i];
        }
    }

    El mul(const El& a, const El& b) const {
        std::array<__int128, kMaxDim> acc{};
        for (int i = 0; i < dim; ++i) {
            if (!a[i]) continue;
            const std::int64_t* trow = tab.data() + static_cast<std::size_t>(i) * dim * kMaxDim;
            for (int j = 0; j < dim; ++j) {
                if (!b[j]) continue;
                __int128 c = static_cast<__int128>(a[i]) * b[j];
                const std::int64_t* t = trow + static_cast<std::size_t>(j) * kMaxDim;
                for (int s = 0; s < dim; ++s)
                    if (t[s]) acc[s] += static_cast<__int128>(static_cast<std::int64_t>(c % slot_mod[s])) * t[s];
            }
        }
        El r{};
        for (int s = 0; s < dim; ++s)
            r[s] = static_cast<std::int64_t>(acc[s] % slot_mod[s]);
        return r;
    }

    std::size_t index(const El& a) const {
        std::size_t idx = 0;
        for (int i = dim - 1; i >= 0; --i)
            idx = idx * static_cast<std::size_t>(slot_mod[i]) + static_cast<std::size_t>(a[i]);
        return idx;
    }

    El from_index(std::size_t idx) const {
        El a{};
        for (int i = 0; i < dim; ++i) {
            a[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(slot_mod[i]));
            idx /= static_cast<std::size_t>(slot_mod[i]);
        }
        return a;
    }

    bool is_unit(const El& a) const {
        for (int i = 0; i < dim; ++i)
            if (slot_val[i] == 0 && a[i] % p != 0) return true;
        return false;
    }

    El pow(El a, Int e) const {
        El r = one();
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

// Build the model from a p-adic field (adapted power basis w^i pi^j).
ResidueRing residue_ring(const padic::Field& f, int m);
// Build from a quadratic extension field (pair basis).
ResidueRing residue_ring(const quadext::QuadField& f, int m);

// project an exact element (integral) to kernel coordinates
ResidueRing::El to_kernel(const ResidueRing& r, const padic::Field& f, const padic::Elem& x);
ResidueRing::El to_kernel(const ResidueRing& r, const quadext::QuadField& f,
                          const quadext::QElem& x);

// ---------------------------------------------------------------------------
// Solubility kernel: does z^2 = a x^2 + b y^2 have a primitive solution in
// O/pi^m?  Decides the Hilbert symbol by brute enumeration (odd p).  The
// square bitmap is shared across pairs over the same ring; the parallel path
// and the serial reference must agree (tested).
// ---------------------------------------------------------------------------
class ConicOracle {
  public:
    explicit ConicOracle(ResidueRing ring, bool parallel = true);
    bool solvable(const ResidueRing::El& a, const ResidueRing::El& b) const;
    const ResidueRing& ring() const { return r_; }

  private:
    ResidueRing r_;
    bool parallel_;
    std::vector<std::uint8_t> squares_;  // marks of {z^2 : z in O/pi^m}
};

bool conic_solvable_kernel(const ResidueRing& r, const ResidueRing::El& a,
                           const ResidueRing::El& b, bool parallel);

// Full oracle on field elements: reduces mod pi^m with m = min(2 vmax + 3,
// largest exponent with |O/pi^m| <= budget), where vmax = max(v(a), v(b)).
// A primitive solution mod pi^3 already lifts by Hensel when vmax <= 1 (odd
// residue characteristic), so capping m at 3 stays sound for class
// representatives; larger m is kept where the ring is small enough, matching
// the stated modulus.
// Ring selection for the oracle: m = 2 vmax + 3 shrunk to fit the budget,
// never below 3.
template <class F>
ResidueRing solubility_ring(const F& fld, long vmax, std::size_t budget = 8000000) {
    int m = static_cast<int>(2 * vmax + 3);
    while (m > 3) {
        ResidueRing probe = residue_ring(fld, m);
        if (probe.size <= budget) return probe;
        --m;
    }
    ResidueRing r = residue_ring(fld, m);
    if (r.size > budget) throw err("Unsupported", "solubility ring exceeds the budget");
    return r;
}

template <class F>
int hilbert_solubility_oracle(const F& fld, const typename F::Elem& a,
                              const typename F::Elem& b, std::size_t budget = 8000000,
                              bool parallel = true) {
    auto va = fld.val(a), vb = fld.val(b);
    if (!va || !vb) throw err("PrecisionExhausted", "solubility oracle near zero");
    long vmax = std::max(*va, *vb);
    if (vmax < 0 || vmax > 1)
        throw err("Internal", "solubility oracle expects square-class representatives");
    ResidueRing r = solubility_ring(fld, vmax, budget);
    auto ak = to_kernel(r, fld, a);
    auto bk = to_kernel(r, fld, b);
    return conic_solvable_kernel(r, ak, bk, parallel) ? 1 : -1;
}

}  // namespace toric
