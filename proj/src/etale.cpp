#include "toric/etale.hpp"

namespace toric::etale {

using padic::Elem;
using padic::Field;
using quadext::QElem;
using quadext::QuadField;

QuadEtale quad_etale_structure(padic::FieldPtr m, const Elem& d) {
    QuadEtale q;
    q.over = m;
    q.d_given = d;
    auto v = m->val(d);
    if (!v) throw err("PrecisionExhausted", "quadratic structure from a near-zero d");
    long vv = *v;
    long half = vv >= 0 ? vv / 2 : -((-vv + 1) / 2);
    // d = pi^{2 half} * d1 with v(d1) in {0, 1}
    Elem d1 = m->shift_pi(d, -2 * half);
    Elem sc = m->pow_i(m->uniformizer(), half);
    long v1 = vv - 2 * half;
    if (v1 == 0) {
        auto root = quadext::sqrt_hensel(*m, d1);
        if (root) {
            q.split = true;
            q.sqrt_split = m->mul(sc, *root);
            return q;
        }
    }
    q.split = false;
    q.scale = sc;
    q.fld = std::make_shared<QuadField>(m, d1);
    return q;
}

int norm_class_indicator(const Field& m, const Elem& x, const QuadEtale& l) {
    if (l.split) return 1;
    return hilbert_symbol(m, x, l.d_given);
}

EtaleAlgebra make_etale(padic::FieldPtr base, std::vector<padic::FieldPtr> comps) {
    if (base->degree() != 1)
        throw err("Unsupported", "etale algebras are supported over the rational base Q_p");
    if (comps.empty()) throw err("Internal", "etale algebra needs at least one component");
    EtaleAlgebra e;
    e.base = std::move(base);
    for (auto& c : comps) {
        if (c->p() != e.base->p()) throw err("Internal", "component over a different prime");
        e.degree += c->degree();
    }
    e.comps = std::move(comps);
    return e;
}

namespace {

// determinant of a matrix of base-field elements by exact cofactor expansion
Elem det_elems(const Field& f, const std::vector<std::vector<Elem>>& m) {
    std::size_t n = m.size();
    std::vector<Elem> dp(std::size_t(1) << n);
    std::vector<bool> have(std::size_t(1) << n, false);
    dp[0] = f.one();
    have[0] = true;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        if (!have[mask]) continue;
        std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == n) continue;
        int sign = 1;
        for (std::size_t col = 0; col < n; ++col) {
            if (mask & (std::size_t(1) << col)) continue;
            Elem term = f.mul(dp[mask], m[row][col]);
            if (sign < 0) term = f.neg(term);
            std::size_t nm = mask | (std::size_t(1) << col);
            if (!have[nm]) {
                dp[nm] = term;
                have[nm] = true;
            } else {
                dp[nm] = f.add(dp[nm], term);
            }
            sign = -sign;
        }
    }
    return dp[(std::size_t(1) << n) - 1];
}

Elem component_trace_gram_det(const Field& base, const Field& fj,
                              const std::optional<Elem>& lambda) {
    int d = fj.degree();
    std::vector<std::vector<Elem>> gram(d, std::vector<Elem>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::vector<Int> ci(static_cast<std::size_t>(d), 0), cj(ci);
            ci[i] = 1;
            cj[j] = 1;
            Elem prod = fj.mul(fj.from_coeffs(ci), fj.from_coeffs(cj));
            if (lambda) prod = fj.mul(prod, *lambda);
            gram[i][j] = base.from_qpnum(fj.trace_to_qp(prod));
        }
    return det_elems(base, gram);
}

}  // namespace

Elem det_etale(const EtaleAlgebra& e) {
    Elem acc = e.base->one();
    for (const auto& fj : e.comps)
        acc = e.base->mul(acc, component_trace_gram_det(*e.base, *fj, std::nullopt));
    return acc;
}

Elem disc_etale_elem(const EtaleAlgebra& e) {
    Elem det = det_etale(e);
    long n = e.degree;
    if ((n * (n - 1) / 2) % 2 == 1) det = e.base->neg(det);
    return det;
}

SquareClassResult disc_etale(const EtaleAlgebra& e) {
    Elem d = disc_etale_elem(e);
    if (e.base->is_zero(d))
        throw err("PrecisionExhausted", "trace-form determinant vanished at working precision");
    return square_class(*e.base, d);
}

DiscResult disc_hermitian_lambda(const EtaleAlgebra& e, const LambdaVector& lambda,
                                 const QuadEtale& k) {
    if (lambda.comps.size() != e.comps.size())
        throw err("DimensionMismatch", "lambda has the wrong number of components");
    Elem n = e.base->one();
    for (std::size_t j = 0; j < e.comps.size(); ++j)
        n = e.base->mul(n, e.base->from_qpnum(e.comps[j]->norm_to_qp(lambda.comps[j])));
    Elem disc = e.base->mul(n, disc_etale_elem(e));
    DiscResult r;
    r.disc = disc;
    r.sign = k.split ? 1 : hilbert_symbol(*e.base, disc, k.d_given);
    return r;
}

Elem disc_hermitian_gram(const EtaleAlgebra& e, const LambdaVector& lambda) {
    Elem acc = e.base->one();
    long n = e.degree;
    for (std::size_t j = 0; j < e.comps.size(); ++j)
        acc = e.base->mul(acc,
                          component_trace_gram_det(*e.base, *e.comps[j], lambda.comps[j]));
    if ((n * (n - 1) / 2) % 2 == 1) acc = e.base->neg(acc);
    return acc;
}

std::vector<QuadEtale> component_quads(const EtaleAlgebra& e, const QuadEtale& k) {
    std::vector<QuadEtale> out;
    for (const auto& fj : e.comps) {
        // embed K's defining d into F_j (base is Q_p, so scalar embedding)
        Elem d_emb = fj->from_qpnum(e.base->trace_to_qp(k.d_given));
        out.push_back(quad_etale_structure(fj, d_emb));
    }
    return out;
}

SignVector omega_vector(const EtaleAlgebra& e, const LambdaVector& lambda,
                        const std::vector<QuadEtale>& ljs) {
    if (lambda.comps.size() != e.comps.size())
        throw err("DimensionMismatch", "lambda has the wrong number of components");
    SignVector sv;
    for (std::size_t j = 0; j < e.comps.size(); ++j) {
        bool sp = ljs[j].split;
        sv.split_mask.push_back(sp);
        sv.signs.push_back(sp ? 1 : norm_class_indicator(*e.comps[j], lambda.comps[j], ljs[j]));
    }
    return sv;
}

std::vector<HermitianClass> classify_hermitian_spaces(int n, bool k_is_field) {
    if (n < 1) throw err("Internal", "dimension must be positive");
    std::vector<HermitianClass> out;
    if (!k_is_field) {
        HermitianClass h;
        h.kind = HermitianClass::Kind::SplitK;
        h.n = n;
        out.push_back(h);
        return out;
    }
    for (int s : {+1, -1}) {
        HermitianClass h;
        h.kind = HermitianClass::Kind::NonArchField;
        h.n = n;
        h.disc_sign = s;
        out.push_back(h);
    }
    return out;
}

std::vector<HermitianClass> classify_hermitian_spaces_arch(int n) {
    std::vector<HermitianClass> out;
    for (int s = 0; s <= n; ++s) {
        HermitianClass h;
        h.kind = HermitianClass::Kind::Arch;
        h.n = n;
        h.r = n - s;
        h.s = s;
        out.push_back(h);
    }
    return out;
}

std::vector<LambdaVector> norm_class_representatives(const EtaleAlgebra& e,
                                                     const std::vector<QuadEtale>& ljs) {
    // canonical two representatives {1, c_j} per non-split component, c_j the
    // first of {u, pi, u pi} that is not a local norm
    std::vector<std::vector<Elem>> choices;
    for (std::size_t j = 0; j < e.comps.size(); ++j) {
        const Field& fj = *e.comps[j];
        std::vector<Elem> ch;
        ch.push_back(fj.one());
        if (!ljs[j].split) {
            Elem u = fj.nonresidue();
            Elem pi = fj.uniformizer();
            for (const Elem& cand : {u, pi, fj.mul(u, pi)}) {
                if (norm_class_indicator(fj, cand, ljs[j]) == -1) {
                    ch.push_back(cand);
                    break;
                }
            }
            if (ch.size() != 2) throw err("Internal", "no non-norm representative found");
        }
        choices.push_back(std::move(ch));
    }
    std::vector<LambdaVector> out;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        LambdaVector lv;
        for (std::size_t j = 0; j < choices.size(); ++j) lv.comps.push_back(choices[j][idx[j]]);
        out.push_back(std::move(lv));
        std::size_t j = 0;
        for (; j < choices.size(); ++j) {
            if (++idx[j] < choices[j].size()) break;
            idx[j] = 0;
        }
        if (j == choices.size()) break;
    }
    return out;
}

std::vector<LambdaVector> embedding_classes(const EtaleAlgebra& e, const QuadEtale& k,
                                            const std::vector<QuadEtale>& ljs,
                                            const HermitianClass& v) {
    if (v.n != e.degree) throw err("DimensionMismatch", "dim V must equal deg E");
    std::vector<LambdaVector> all = norm_class_representatives(e, ljs);
    if (k.split) {
        // E^x / N(L^x) is trivial: the single class [1]
        return {all.front()};
    }
    std::vector<LambdaVector> out;
    for (auto& lv : all) {
        DiscResult dr = disc_hermitian_lambda(e, lv, k);
        if (dr.sign == v.disc_sign) out.push_back(std::move(lv));
    }
    return out;
}

std::vector<ArchLambda> embedding_classes_arch(const ArchEtale& e, const HermitianClass& v) {
    if (v.n != e.r_comps + 2 * e.c_comps)
        throw err("DimensionMismatch", "dim V must equal deg E");
    // a negative lambda on a real component contributes a (0,1) block; each
    // complex component contributes a split (1,1) block
    std::vector<ArchLambda> out;
    for (std::int64_t mask = 0; mask < (std::int64_t(1) << e.r_comps); ++mask) {
        int neg = __builtin_popcountll(static_cast<unsigned long long>(mask));
        if (neg + e.c_comps != v.s) continue;
        ArchLambda al;
        for (int j = 0; j < e.r_comps; ++j) al.signs.push_back((mask >> j) & 1 ? -1 : +1);
        out.push_back(std::move(al));
    }
    return out;
}

QElem q_delta_expression(const QuadField& k, const Elem& b, const QElem& delta) {
    const Field& f = k.base();
    QElem bd = k.mul(k.from_base(b), delta);
    QElem up = k.add(k.one(), bd);
    QElem dn = k.sub(k.one(), bd);
    padic::Elem nup = k.norm_to_base(up);
    padic::Elem ndn = k.norm_to_base(dn);
    if (f.is_zero(nup) || f.is_zero(ndn))
        throw err("PrecisionExhausted", "q_F evaluated too close to the excluded locus");
    auto jmap = [&](const QElem& x) { return k.div(x, k.conj(x)); };
    QElem jp = jmap(up), jm = jmap(dn);
    QElem num = k.sub(jp, jm);
    QElem den = k.add(k.add(jp, jm), k.from_int(2));
    if (k.is_zero(den)) throw err("PrecisionExhausted", "q_F denominator vanished at precision");
    return k.div(num, den);
}

}  // namespace toric::etale
