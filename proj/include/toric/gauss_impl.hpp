#pragma once

// Kernel path for the Gauss sums in chars.hpp: the unit walk runs on the
// int64 residue ring, character phases are carried as integer numerators
// over two fixed denominators, and blocks parallelize over OpenMP threads
// (the exact-walk gauss_sum_ref stays as the serial reference).

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toric::chars {

namespace detail {

inline std::int64_t to_i64_checked(const Int& x, const char* what) {
    if (x > Int(std::int64_t(1) << 62) || x < 0)
        throw err("Unsupported", std::string("integer too large in Gauss kernel: ") + what);
    return static_cast<std::int64_t>(x);
}

inline ResidueRing ring_of(const toric::padic::Field& f, int m) { return residue_ring(f, m); }
inline ResidueRing ring_of(const toric::quadext::QuadField& f, int m) { return residue_ring(f, m); }

inline ResidueRing::El kern(const ResidueRing& r, const toric::padic::Field& f,
                            const toric::padic::Elem& x) {
    return to_kernel(r, f, x);
}
inline ResidueRing::El kern(const ResidueRing& r, const toric::quadext::QuadField& f,
                            const toric::quadext::QElem& x) {
    return to_kernel(r, f, x);
}

// basis element of coordinate slot s as an exact field element
inline toric::padic::Elem coord_basis(const toric::padic::Field& f, int s) {
    std::vector<Int> c(static_cast<std::size_t>(f.degree()), 0);
    c[static_cast<std::size_t>(s)] = 1;
    return f.from_coeffs(c);
}
inline toric::quadext::QElem coord_basis(const toric::quadext::QuadField& f, int s) {
    int db = f.base().degree();
    std::vector<Int> c(static_cast<std::size_t>(db), 0);
    c[static_cast<std::size_t>(s % db)] = 1;
    toric::padic::Elem part = f.base().from_coeffs(c);
    return s < db ? f.from_base(part) : f.make(f.base().zero(), part);
}

}  // namespace detail

template <class F>
std::complex<double> gauss_sum_kernel(const F& fld, const MulChar<F>& chi, int a,
                                      const typename F::Elem& c, bool parallel) {
    UnitGroup<F> ga(fld, a);
    UnitWalk<F> walk(fld, ga);
    std::size_t total = walk.total();

    ResidueRing r = detail::ring_of(fld, a);
    std::vector<ResidueRing::El> gens_k, carry_k;
    std::vector<Rot> gen_rots, carry_rots;
    for (std::size_t t = 0; t < walk.gens.size(); ++t) {
        gens_k.push_back(detail::kern(r, fld, walk.gens[t]));
        carry_k.push_back(detail::kern(r, fld, walk.carry[t]));
        gen_rots.push_back(-chi.value(walk.gens[t]).rot);
        carry_rots.push_back(-chi.value(walk.carry[t]).rot);
    }

    // chi phases over a common denominator
    Int dchi_big = 1;
    for (const Rot& rt : gen_rots) dchi_big = boost::multiprecision::lcm(dchi_big, rt.den);
    for (const Rot& rt : carry_rots) dchi_big = boost::multiprecision::lcm(dchi_big, rt.den);
    std::int64_t dchi = detail::to_i64_checked(dchi_big, "character denominator");
    auto scale_rot = [&](const Rot& rt) {
        return detail::to_i64_checked(rt.num * (dchi_big / rt.den), "character numerator");
    };
    std::vector<std::int64_t> gen_num, carry_num;
    for (const Rot& rt : gen_rots) gen_num.push_back(scale_rot(rt));
    for (const Rot& rt : carry_rots) carry_num.push_back(scale_rot(rt));

    // psi functional per coordinate slot
    Int dpsi_big = 1;
    std::vector<Rot> trots;
    for (int s = 0; s < r.dim; ++s) {
        Rot tr = fld.trace_rot(fld.mul(c, detail::coord_basis(fld, s)));
        trots.push_back(tr);
        dpsi_big = boost::multiprecision::lcm(dpsi_big, tr.den);
    }
    std::int64_t dpsi = detail::to_i64_checked(dpsi_big, "psi denominator");
    std::vector<std::int64_t> tnum(static_cast<std::size_t>(r.dim));
    for (int s = 0; s < r.dim; ++s)
        tnum[static_cast<std::size_t>(s)] =
            detail::to_i64_checked(trots[static_cast<std::size_t>(s)].num *
                                       (dpsi_big / trots[static_cast<std::size_t>(s)].den),
                                   "psi numerator");

    std::size_t ndig = walk.sizes.size();
    std::vector<std::int64_t> sizes(ndig);
    for (std::size_t t = 0; t < ndig; ++t)
        sizes[t] = detail::to_i64_checked(walk.sizes[t], "digit size");

    const double two_pi = 2.0 * 3.14159265358979323846;
    double re = 0.0, im = 0.0;

    auto run_block = [&](std::size_t lo, std::size_t hi, double& bre, double& bim) {
        // decode starting digits and reconstruct the starting state
        std::vector<std::int64_t> digits(ndig, 0);
        std::size_t idx = lo;
        ResidueRing::El u = r.one();
        Int rot_start_num = 0;
        for (std::size_t t = 0; t < ndig; ++t) {
            digits[t] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(sizes[t]));
            idx /= static_cast<std::size_t>(sizes[t]);
            if (digits[t]) {
                u = r.mul(u, r.pow(gens_k[t], Int(digits[t])));
                rot_start_num += Int(gen_num[t]) * digits[t];
            }
        }
        std::int64_t chinum = static_cast<std::int64_t>(mod_floor(rot_start_num, Int(dchi)));
        for (std::size_t i = lo; i < hi; ++i) {
            __int128 acc = 0;
            for (int s = 0; s < r.dim; ++s)
                if (u[s] && tnum[static_cast<std::size_t>(s)])
                    acc += static_cast<__int128>(u[s]) * tnum[static_cast<std::size_t>(s)];
            std::int64_t psinum = static_cast<std::int64_t>(acc % dpsi);
            double ang = two_pi * (static_cast<double>(chinum) / static_cast<double>(dchi) +
                                   static_cast<double>(psinum) / static_cast<double>(dpsi));
            bre += std::cos(ang);
            bim += std::sin(ang);
            // advance odometer
            for (std::size_t t = 0; t < ndig; ++t) {
                if (++digits[t] < sizes[t]) {
                    u = r.mul(u, gens_k[t]);
                    chinum = (chinum + gen_num[t]) % dchi;
                    break;
                }
                digits[t] = 0;
                u = r.mul(u, carry_k[t]);
                chinum = (chinum + carry_num[t]) % dchi;
            }
        }
    };

    if (!parallel) {
        run_block(0, total, re, im);
        return {re, im};
    }
#pragma omp parallel reduction(+ : re, im)
    {
        int nt = 1, tid = 0;
#ifdef _OPENMP
        nt = omp_get_num_threads();
        tid = omp_get_thread_num();
#endif
        std::size_t chunk = (total + nt - 1) / static_cast<std::size_t>(nt);
        std::size_t lo = std::min(total, chunk * static_cast<std::size_t>(tid));
        std::size_t hi = std::min(total, lo + chunk);
        double bre = 0.0, bim = 0.0;
        if (lo < hi) run_block(lo, hi, bre, bim);
        re += bre;
        im += bim;
    }
    return {re, im};
}

}  // namespace toric::chars
