#include "toric/residue_ring.hpp"

#include <atomic>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toric {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

std::int64_t ipow(std::int64_t b, long e) {
    std::int64_t r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

template <class F, class CoordFn, class BasisFn>
ResidueRing build(const F& fld, int m, int dim, const std::vector<int>& vals, CoordFn coords,
                  BasisFn basis) {
    ResidueRing r;
    r.p = static_cast<std::int64_t>(fld.p());
    r.m = m;
    r.dim = dim;
    for (int s = 0; s < dim; ++s) r.slot_val[s] = vals[s];
    int eabs = fld.abs_e();
    if (dim > ResidueRing::kMaxDim) throw err("Unsupported", "kernel ring dimension too large");
    for (int s = 0; s < dim; ++s) {
        long k = std::max<long>(0, ceil_div(m - vals[s], eabs));
        std::int64_t mod = ipow(r.p, k);
        r.slot_mod[s] = mod;
        r.size *= static_cast<std::size_t>(mod);
    }
    for (int s = dim; s < ResidueRing::kMaxDim; ++s) r.slot_mod[s] = 1;
    r.tab.assign(static_cast<std::size_t>(dim) * dim * ResidueRing::kMaxDim, 0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            auto prod = fld.mul(basis(i), basis(j));
            std::vector<Int> c = coords(prod);
            for (int s = 0; s < dim; ++s)
                r.tab[(static_cast<std::size_t>(i) * dim + j) * ResidueRing::kMaxDim + s] =
                    static_cast<std::int64_t>(mod_floor(c[s], Int(r.slot_mod[s])));
        }
    return r;
}

}  // namespace

ResidueRing residue_ring(const padic::Field& f, int m) {
    if (f.prec() < m) throw err("LevelExceedsPrecision", "residue ring beyond field precision");
    int d = f.degree();
    std::vector<int> vals(static_cast<std::size_t>(d));
    for (int j = 0; j < f.e(); ++j)
        for (int i = 0; i < f.f(); ++i) vals[static_cast<std::size_t>(j) * f.f() + i] = j;
    auto coords = [&](const padic::Elem& x) {
        if (x.shift != 0) throw err("Internal", "kernel coords of a non-integral element");
        return x.c;
    };
    auto basis = [&](int s) {
        std::vector<Int> c(static_cast<std::size_t>(d), 0);
        c[s] = 1;
        return f.from_coeffs(c);
    };
    struct Facade {
        const padic::Field& f;
        const Int& p() const { return f.p(); }
        int abs_e() const { return f.e(); }
        padic::Elem mul(const padic::Elem& a, const padic::Elem& b) const { return f.mul(a, b); }
    } fac{f};
    return build(fac, m, d, vals, coords, basis);
}

ResidueRing residue_ring(const quadext::QuadField& f, int m) {
    if (f.prec() < m) throw err("LevelExceedsPrecision", "residue ring beyond field precision");
    const padic::Field& bf = f.base();
    int db = bf.degree();
    int dim = 2 * db;
    bool ram = f.ramified();
    std::vector<int> vals(static_cast<std::size_t>(dim));
    for (int j = 0; j < bf.e(); ++j)
        for (int i = 0; i < bf.f(); ++i) {
            int s = j * bf.f() + i;
            vals[static_cast<std::size_t>(s)] = ram ? 2 * j : j;
            vals[static_cast<std::size_t>(db + s)] = ram ? 2 * j + 1 : j;
        }
    auto coords = [&](const quadext::QElem& x) {
        if (x.a.shift != 0 || x.b.shift != 0)
            throw err("Internal", "kernel coords of a non-integral element");
        std::vector<Int> c = x.a.c;
        c.insert(c.end(), x.b.c.begin(), x.b.c.end());
        return c;
    };
    auto basis = [&](int s) {
        std::vector<Int> c(static_cast<std::size_t>(db), 0);
        c[static_cast<std::size_t>(s % db)] = 1;
        padic::Elem part = bf.from_coeffs(c);
        return s < db ? f.from_base(part) : f.make(bf.zero(), part);
    };
    struct Facade {
        const quadext::QuadField& f;
        const Int& p() const { return f.p(); }
        int abs_e() const { return f.abs_e(); }
        quadext::QElem mul(const quadext::QElem& a, const quadext::QElem& b) const {
            return f.mul(a, b);
        }
    } fac{f};
    return build(fac, m, dim, vals, coords, basis);
}

ResidueRing::El to_kernel(const ResidueRing& r, const padic::Field& f, const padic::Elem& x) {
    if (x.shift != 0) throw err("Internal", "to_kernel: non-integral element");
    (void)f;
    ResidueRing::El e{};
    for (int s = 0; s < r.dim; ++s)
        e[s] = static_cast<std::int64_t>(mod_floor(x.c[s], Int(r.slot_mod[s])));
    return e;
}

ResidueRing::El to_kernel(const ResidueRing& r, const quadext::QuadField& f,
                          const quadext::QElem& x) {
    if (x.a.shift != 0 || x.b.shift != 0) throw err("Internal", "to_kernel: non-integral element");
    (void)f;
    int db = r.dim / 2;
    ResidueRing::El e{};
    for (int s = 0; s < db; ++s) {
        e[s] = static_cast<std::int64_t>(mod_floor(x.a.c[s], Int(r.slot_mod[s])));
        e[db + s] = static_cast<std::int64_t>(mod_floor(x.b.c[s], Int(r.slot_mod[db + s])));
    }
    return e;
}

namespace {

// advance coordinate odometer; returns false after the last tuple
inline bool odo_next(ResidueRing::El& c, const ResidueRing& r) {
    for (int i = 0; i < r.dim; ++i) {
        if (++c[i] < r.slot_mod[i]) return true;
        c[i] = 0;
    }
    return false;
}

// v = coeff * x^2 + offset walked over x in [begin, end) of the odometer
// order; invokes visit(v) until it returns true (early exit) or the range is
// exhausted.  Returns whether visit ever returned true.
template <class Visit>
bool walk_quadric(const ResidueRing& r, const ResidueRing::El& coeff,
                  const ResidueRing::El& offset, std::size_t begin, std::size_t end,
                  Visit visit) {
    ResidueRing::El x = r.from_index(begin);
    for (std::size_t i = begin; i < end; ++i) {
        ResidueRing::El v = r.mul(x, x);
        v = r.mul(v, coeff);
        r.add_inplace(v, offset);
        if (visit(v)) return true;
        odo_next(x, r);
    }
    return false;
}

void fill_marks(const ResidueRing& r, const ResidueRing::El& coeff,
                const ResidueRing::El& offset, std::vector<std::uint8_t>& marks,
                bool parallel) {
    std::int64_t n = static_cast<std::int64_t>(r.size);
    if (!parallel) {
        walk_quadric(r, coeff, offset, 0, r.size, [&](const ResidueRing::El& v) {
            marks[r.index(v)] = 1;
            return false;
        });
        return;
    }
    std::unique_ptr<std::atomic<std::uint8_t>[]> am(new std::atomic<std::uint8_t>[r.size]);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        am[static_cast<std::size_t>(i)].store(0, std::memory_order_relaxed);
#pragma omp parallel
    {
        int nt = 1, tid = 0;
#ifdef _OPENMP
        nt = omp_get_num_threads();
        tid = omp_get_thread_num();
#endif
        std::size_t chunk = (r.size + nt - 1) / nt;
        std::size_t b = std::min<std::size_t>(r.size, chunk * tid);
        std::size_t e = std::min<std::size_t>(r.size, b + chunk);
        walk_quadric(r, coeff, offset, b, e, [&](const ResidueRing::El& v) {
            am[r.index(v)].store(1, std::memory_order_relaxed);
            return false;
        });
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        marks[static_cast<std::size_t>(i)] = am[static_cast<std::size_t>(i)].load(std::memory_order_relaxed);
}

bool scan_marks(const ResidueRing& r, const ResidueRing::El& coeff,
                const ResidueRing::El& offset, const std::vector<std::uint8_t>& marks,
                bool parallel) {
    if (!parallel) {
        return walk_quadric(r, coeff, offset, 0, r.size,
                            [&](const ResidueRing::El& v) { return marks[r.index(v)] != 0; });
    }
    std::atomic<bool> found{false};
#pragma omp parallel
    {
        int nt = 1, tid = 0;
#ifdef _OPENMP
        nt = omp_get_num_threads();
        tid = omp_get_thread_num();
#endif
        std::size_t chunk = (r.size + nt - 1) / nt;
        std::size_t b = std::min<std::size_t>(r.size, chunk * tid);
        std::size_t e = std::min<std::size_t>(r.size, b + chunk);
        walk_quadric(r, coeff, offset, b, e, [&](const ResidueRing::El& v) {
            if (found.load(std::memory_order_relaxed)) return true;
            if (marks[r.index(v)]) {
                found.store(true, std::memory_order_relaxed);
                return true;
            }
            return false;
        });
    }
    return found.load();
}

}  // namespace

ConicOracle::ConicOracle(ResidueRing ring, bool parallel)
    : r_(std::move(ring)), parallel_(parallel), squares_(r_.size, 0) {
    fill_marks(r_, r_.one(), r_.zero(), squares_, parallel_);
}

bool ConicOracle::solvable(const ResidueRing::El& a, const ResidueRing::El& b) const {
    ResidueRing::El one = r_.one(), zero = r_.zero();
    ResidueRing::El nb{};
    for (int i = 0; i < r_.dim; ++i) nb[i] = b[i] ? r_.slot_mod[i] - b[i] : 0;
    // case x = 1: z^2 = a + b y^2
    if (scan_marks(r_, b, a, squares_, parallel_)) return true;
    // case y = 1: z^2 = b + a x^2
    if (scan_marks(r_, a, b, squares_, parallel_)) return true;
    // case z = 1: a x^2 = 1 - b y^2
    std::vector<std::uint8_t> ax(r_.size, 0);
    fill_marks(r_, a, zero, ax, parallel_);
    return scan_marks(r_, nb, one, ax, parallel_);
}

bool conic_solvable_kernel(const ResidueRing& r, const ResidueRing::El& a,
                           const ResidueRing::El& b, bool parallel) {
    ConicOracle oracle(r, parallel);
    return oracle.solvable(a, b);
}

}  // namespace toric
