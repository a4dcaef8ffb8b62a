#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric/util.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// Presentation of M^x / (1 + pi^k): free generator pi, Teichmueller generator
// zeta of order q-1, and a diagonalized basis of the principal units
// (1 + pi)/(1 + pi^k) obtained from the raw generators 1 + rho_b pi^t by a
// Smith normal form of their p-power relations.  Discrete logs peel the
// filtration level by level; the Teichmueller part uses baby-step/giant-step
// with a brute scan fallback for small q.
// ---------------------------------------------------------------------------

template <class F>
typename F::Elem teichmuller_lift(const F& fld, typename F::Elem u) {
    for (long it = 0; it <= fld.prec() + 2; ++it) {
        auto uq = fld.pow_i(u, fld.q());
        if (fld.eq(uq, u)) return u;
        u = uq;
    }
    throw err("PrecisionExhausted", "teichmuller iteration did not stabilize");
}

inline std::vector<Int> factor_distinct(Int n) {
    std::vector<Int> ps;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

template <class F>
struct DLog {
    Int pi_exp;
    Int zeta_exp;
    std::vector<Int> basis_exps;
};

template <class F>
class UnitGroup {
  public:
    using Elem = typename F::Elem;

    UnitGroup(const F& fld, int level) : fld_(fld), level_(level) {
        if (level_ < 1) throw err("Internal", "unit group level must be >= 1");
        if (level_ > fld.prec() - 1)
            throw err("LevelExceedsPrecision", "unit-group level exceeds the field precision");
        pi_ = fld_.uniformizer();
        zeta_ = find_zeta();
        fp_ = 0;
        {
            std::int64_t q = res_size();
            const Int p = fld_.p();
            while (q > 1) {
                q /= static_cast<std::int64_t>(p);
                ++fp_;
            }
        }
        build_principal();
        build_bsgs();
    }

    const F& field() const { return fld_; }
    int level() const { return level_; }
    const Elem& uniformizer() const { return pi_; }
    const Elem& zeta() const { return zeta_; }
    Int zeta_order() const { return fld_.q() - 1; }
    const std::vector<Elem>& basis() const { return basis_; }
    const std::vector<Int>& orders() const { return orders_; }

    // order of the finite part |O^x / (1 + pi^k)|
    Int finite_order() const {
        Int o = fld_.q() - 1;
        for (const Int& d : orders_) o *= d;
        return o;
    }

    DLog<F> dlog(const Elem& x) const {
        auto v = fld_.val(x);
        if (!v) throw err("PrecisionExhausted", "dlog of an element indistinguishable from 0");
        Elem u = fld_.shift_pi(x, -*v);
        Int zi = teich_dlog(u);
        Elem u1 = fld_.mul(u, fld_.pow_i(zeta_, -(zi)));
        std::vector<Int> raw = peel(u1);
        // convert raw exponents to basis exponents: be = raw * V, reduced
        std::vector<Int> be(keep_.size(), 0);
        for (std::size_t t = 0; t < keep_.size(); ++t) {
            Int acc = 0;
            for (std::size_t j = 0; j < raw.size(); ++j) acc += raw[j] * vmat_[j][keep_[t]];
            be[t] = mod_floor(acc, orders_[t]);
        }
        return DLog<F>{Int(*v), zi, be};
    }

    Elem recombine(const DLog<F>& d) const {
        Elem r = fld_.pow_i(pi_, d.pi_exp);
        r = fld_.mul(r, fld_.pow_i(zeta_, d.zeta_exp));
        for (std::size_t t = 0; t < basis_.size(); ++t)
            r = fld_.mul(r, fld_.pow_i(basis_[t], d.basis_exps[t]));
        return r;
    }

    // raw principal generators 1 + rho_b pi^t (used by conductor scans)
    const std::vector<Elem>& raw_gens() const { return raw_; }
    int raw_level(std::size_t idx) const { return 1 + static_cast<int>(idx) / fp_; }
    // basis exponents of a raw generator
    std::vector<Int> raw_to_basis(std::size_t idx) const {
        std::vector<Int> be(keep_.size(), 0);
        for (std::size_t t = 0; t < keep_.size(); ++t)
            be[t] = mod_floor(vmat_[idx][keep_[t]], orders_[t]);
        return be;
    }

  private:
    const F& fld_;
    int level_;
    Elem pi_, zeta_;
    int fp_;
    std::vector<Elem> raw_;
    std::vector<std::vector<Int>> vmat_;       // s x s
    std::vector<std::size_t> keep_;
    std::vector<Elem> basis_;
    std::vector<Int> orders_;
    std::map<std::int64_t, Int> baby_;
    Elem giant_;
    Int bs_m_ = 0;

    std::int64_t res_size() const { return static_cast<std::int64_t>(fld_.q()); }

    Elem find_zeta() const {
        Int qm1 = fld_.q() - 1;
        if (qm1 == 1) return fld_.one();
        std::vector<Int> ps = factor_distinct(qm1);
        for (std::int64_t idx = 1; idx < res_size(); ++idx) {
            Elem c = fld_.residue_lift(idx);
            bool gen = true;
            for (const Int& ell : ps) {
                Elem t = fld_.pow_i(c, qm1 / ell);
                if (fld_.residue_index(t) == fld_.residue_index(fld_.one())) {
                    gen = false;
                    break;
                }
            }
            if (gen) return teichmuller_lift(fld_, c);
        }
        throw err("Internal", "no residue generator found");
    }

    void build_principal() {
        int s = (level_ - 1) * fp_;
        raw_.clear();
        for (int t = 1; t < level_; ++t)
            for (int b = 0; b < fp_; ++b) {
                std::int64_t ridx = 1;
                for (int i = 0; i < b; ++i) ridx *= static_cast<std::int64_t>(fld_.p());
                Elem rho = fld_.residue_lift(ridx);
                raw_.push_back(fld_.add(fld_.one(), fld_.shift_pi(rho, t)));
            }
        if (s == 0) return;
        // relation rows: p * e_j - peel(raw_j^p)
        std::vector<std::vector<Int>> rel(s, std::vector<Int>(s, 0));
        for (int j = 0; j < s; ++j) {
            std::vector<Int> pe = peel(fld_.pow_i(raw_[j], fld_.p()));
            for (int i = 0; i < s; ++i) rel[j][i] = -pe[i];
            rel[j][j] += fld_.p();
        }
        Snf snf = smith_normal_form(rel);
        vmat_ = snf.v;
        // V^{-1} by exact Gaussian elimination; entries are then reduced
        // modulo p^level, which is a multiple of every raw-generator order
        std::vector<std::vector<Int>> vinv = unimodular_inverse(snf.v);
        Int pl = pow_int(fld_.p(), static_cast<unsigned long>(level_));
        for (auto& row : vinv)
            for (auto& x : row) x = mod_floor(x, pl);
        keep_.clear();
        basis_.clear();
        orders_.clear();
        for (int i = 0; i < s; ++i) {
            Int d = snf.d[i][i];
            if (d == 1) continue;
            if (d == 0) throw err("Internal", "principal unit relations not full rank");
            keep_.push_back(static_cast<std::size_t>(i));
            orders_.push_back(d);
            Elem b = fld_.one();
            for (int j = 0; j < s; ++j) b = fld_.mul(b, fld_.pow_i(raw_[j], vinv[i][j]));
            basis_.push_back(b);
        }
    }

    // exponents over the raw generators of a principal unit (u = 1 mod pi)
    std::vector<Int> peel(Elem u) const {
        int s = (level_ - 1) * fp_;
        std::vector<Int> exps(s, 0);
        const Int p = fld_.p();
        for (int t = 1; t < level_; ++t) {
            Elem w = fld_.shift_pi(fld_.sub(u, fld_.one()), -t);
            auto vw = fld_.val(fld_.sub(u, fld_.one()));
            if (vw && *vw < t) throw err("Internal", "peel: not a principal unit at this level");
            std::int64_t ci = fld_.residue_index(w);
            // base-p digits of the residue index are the F_p-coordinates
            for (int b = 0; b < fp_; ++b) {
                std::int64_t digit = ci % static_cast<std::int64_t>(p);
                ci /= static_cast<std::int64_t>(p);
                if (digit == 0) continue;
                int j = (t - 1) * fp_ + b;
                exps[j] = digit;
                u = fld_.mul(u, fld_.pow_i(raw_[j], -Int(digit)));
            }
        }
        return exps;
    }

    void build_bsgs() {
        Int qm1 = fld_.q() - 1;
        bs_m_ = 1;
        while (bs_m_ * bs_m_ < qm1) ++bs_m_;
        Elem b = fld_.one();
        for (Int j = 0; j < bs_m_; ++j) {
            baby_.emplace(fld_.residue_index(b), j);
            b = fld_.mul(b, zeta_);
        }
        giant_ = fld_.pow_i(zeta_, -bs_m_);
    }

    Int teich_dlog(const Elem& u) const {
        Elem g = u;
        for (Int i = 0; i * bs_m_ <= fld_.q(); ++i) {
            auto it = baby_.find(fld_.residue_index(g));
            if (it != baby_.end()) return mod_floor(i * bs_m_ + it->second, fld_.q() - 1);
            g = fld_.mul(g, giant_);
        }
        throw err("LogFailure", "teichmuller discrete log failed");
    }

    // inverse of a unimodular integer matrix (exact rational elimination)
    static std::vector<std::vector<Int>> unimodular_inverse(
        const std::vector<std::vector<Int>>& a0) {
        using Q = boost::multiprecision::cpp_rational;
        int n = static_cast<int>(a0.size());
        std::vector<std::vector<Q>> a(n, std::vector<Q>(2 * n, 0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a[i][j] = Q(a0[i][j]);
            a[i][n + i] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw err("Internal", "matrix not invertible");
            std::swap(a[col], a[piv]);
            Q f = a[col][col];
            for (int c2 = 0; c2 < 2 * n; ++c2) a[col][c2] /= f;
            for (int r = 0; r < n; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Q g = a[r][col];
                for (int c2 = 0; c2 < 2 * n; ++c2) a[r][c2] -= g * a[col][c2];
            }
        }
        std::vector<std::vector<Int>> out(n, std::vector<Int>(n, 0));
        for (int r = 0; r < n; ++r)
            for (int c2 = 0; c2 < n; ++c2) {
                Q v = a[r][n + c2];
                if (boost::multiprecision::denominator(v) != 1)
                    throw err("Internal", "non-integral inverse of a unimodular matrix");
                out[r][c2] = Int(boost::multiprecision::numerator(v));
            }
        return out;
    }

    static Int padic_det_ref(const std::vector<std::vector<Int>>& m) {
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
                if (m[row][col] != 0)
                    dp[mask | (std::size_t(1) << col)] += sign * dp[mask] * m[row][col];
                sign = -sign;
            }
        }
        return dp[(std::size_t(1) << n) - 1];
    }
};

}  // namespace toric
