#include "toric/corpus.hpp"

namespace toric::corpus {

using namespace toric::dichotomy;
using padic::Elem;
using padic::Field;
using quadext::QElem;
using quadext::QuadField;

namespace {

std::vector<Elem> f_gens(const UnitGroup<Field>& gf) {
    std::vector<Elem> g;
    g.push_back(gf.uniformizer());
    g.push_back(gf.zeta());
    for (const auto& b : gf.basis()) g.push_back(b);
    return g;
}

std::vector<QElem> group_gens(const UnitGroup<QuadField>& g) {
    std::vector<QElem> out;
    out.push_back(g.uniformizer());
    out.push_back(g.zeta());
    for (const auto& b : g.basis()) out.push_back(b);
    return out;
}

}  // namespace

std::shared_ptr<LocalSetting> build_setting(const Int& p, int e_shape, int d_class, int k0,
                                            std::uint64_t seed) {
    Rng rng(seed);
    int emax = e_shape == 2 ? 2 : 1;
    int lmax = k0 * emax * 2;  // deepest unit-group level across L_j
    int prec = 2 * lmax + 4;
    auto f = Field::make_qp(p, prec);
    std::vector<padic::FieldPtr> comps;
    switch (e_shape) {
        case 0:
            comps = {f, f};
            break;
        case 1:
            comps = {Field::make_unramified(p, 2, prec)};
            break;
        case 2:
            comps = {Field::make_eisenstein(p, 1, {-p, Int(0), Int(1)}, prec)};
            break;
        default:
            throw err("SchemaError", "unknown etale shape");
    }
    auto e = etale::make_etale(f, comps);
    Elem d;
    switch (d_class) {
        case 0:
            d = f->one();  // split K
            break;
        case 1:
            d = f->nonresidue();
            break;
        case 2:
            d = f->uniformizer();
            break;
        case 3:
            d = f->mul(f->nonresidue(), f->uniformizer());
            break;
        default:
            throw err("SchemaError", "unknown d class");
    }
    // small deterministic twists for psi and delta
    Elem gamma = f->one();
    switch (rng.uniform(0, 2)) {
        case 1:
            gamma = f->nonresidue();
            break;
        case 2:
            gamma = f->uniformizer();
            break;
        default:
            break;
    }
    Elem t = rng.uniform(0, 1) ? f->one() : f->from_int(1 + rng.uniform(1, 3));
    if (f->is_zero(t)) t = f->one();
    auto s = std::make_shared<LocalSetting>(
        make_setting(f, std::move(e), d, k0, gamma, t));
    return s;
}

std::vector<CompChar> component_characters(const LocalSetting& s, std::size_t j, int max_cond) {
    std::vector<CompChar> out;
    if (!s.Ls[j].split) {
        std::vector<QElem> sub;
        const QuadField& l = *s.Ls[j].fld;
        for (const Elem& g : f_gens(*s.gFj[j])) sub.push_back(l.from_base(g));
        auto duals = quotient_dual<QuadField>(s.gLj[j], sub);
        for (auto& c : duals) {
            if (c.conductor() > max_cond) continue;
            CompChar cc;
            cc.fld = std::move(c);
            out.push_back(std::move(cc));
        }
        return out;
    }
    // split component: finite-order characters of F_j^x with chi(pi)^4 = 1
    // and conductor bounded by pinning the deep principal units
    const auto& g = *s.gFj[j];
    std::vector<Elem> sub;
    sub.push_back(s.E.comps[j]->pow_i(g.uniformizer(), 4));
    const auto& raws = g.raw_gens();
    for (std::size_t r = 0; r < raws.size(); ++r)
        if (g.raw_level(r) >= std::max(max_cond, 1)) sub.push_back(raws[r]);
    for (auto& c : quotient_dual<Field>(s.gFj[j], sub)) {
        if (c.conductor() > max_cond) continue;
        CompChar cc;
        cc.spl = std::move(c);
        out.push_back(std::move(cc));
    }
    return out;
}

SplitChar minimal_mu(const LocalSetting& s) {
    if (!s.k_field()) return canonical_mu(s);
    // force triviality on principal units above level a, smallest a first
    const auto& g = *s.gK;
    std::vector<QElem> elems;
    std::vector<Rot> targets;
    for (const Elem& fg : f_gens(*s.gF)) {
        elems.push_back(s.K.fld->from_base(fg));
        targets.push_back(hilbert_symbol(*s.F, fg, s.K.d_given) == 1 ? Rot() : Rot(1, 2));
    }
    for (int a = 0; a <= g.level(); ++a) {
        std::vector<QElem> el = elems;
        std::vector<Rot> tg = targets;
        bool ok = true;
        const auto& raws = g.raw_gens();
        for (std::size_t r = 0; r < raws.size(); ++r)
            if (g.raw_level(r) >= std::max(a, 1)) {
                el.push_back(raws[r]);
                tg.push_back(Rot());
            }
        if (a == 0) {
            el.push_back(g.zeta());
            tg.push_back(Rot());
        }
        try {
            SplitChar mu;
            mu.fld = character_with_values<QuadField>(s.gK, el, tg);
            return mu;
        } catch (const ToricError&) {
            ok = false;
        }
        (void)ok;
    }
    return canonical_mu(s);
}

KOneChar make_compatible_beta(const LocalSetting& s, const std::vector<CompChar>& alpha,
                              const SplitChar& chi_w, const SplitChar& chi_v) {
    std::vector<Rot> rhs = compat_rhs_values(s, alpha, chi_w, chi_v);
    KOneChar beta;
    if (s.k_field()) {
        MulChar<QuadField> b = MulChar<QuadField>::trivial(s.gK);
        b.pi_rot = rhs[0];
        b.zeta_rot = rhs[1];
        for (std::size_t i = 0; i < b.basis_rots.size(); ++i) b.basis_rots[i] = rhs[i + 2];
        b.validate();
        beta.fld = std::move(b);
        return beta;
    }
    MulChar<Field> b = MulChar<Field>::trivial(s.gF);
    b.pi_rot = rhs[0];
    b.zeta_rot = rhs[1];
    for (std::size_t i = 0; i < b.basis_rots.size(); ++i) b.basis_rots[i] = rhs[i + 2];
    b.validate();
    beta.spl = std::move(b);
    return beta;
}

std::optional<KOneChar> perturb_beta(const LocalSetting& s, const KOneChar& beta) {
    if (s.k_field()) {
        std::vector<QElem> sub;
        for (const Elem& g : f_gens(*s.gF)) sub.push_back(s.K.fld->from_base(g));
        auto duals = quotient_dual<QuadField>(s.gK, sub);
        for (auto& c : duals) {
            if (c.is_trivial()) continue;
            KOneChar out;
            out.fld = beta.fld->times(c);
            return out;
        }
        return std::nullopt;
    }
    // K split: K^1 = F^x; twist by a nontrivial finite-order character
    MulChar<Field> tw = MulChar<Field>::trivial(s.gF);
    tw.zeta_rot = Rot(1, 2);
    KOneChar out;
    out.spl = beta.spl->times(tw);
    return out;
}

etale::LambdaVector scale_lambda_by_norm(const LocalSetting& s, const etale::LambdaVector& lam,
                                         Rng& rng) {
    etale::LambdaVector out;
    for (std::size_t j = 0; j < lam.comps.size(); ++j) {
        const Field& fj = *s.E.comps[j];
        Elem nrm;
        if (s.Ls[j].split) {
            // norms from F_j x F_j are all of F_j^x
            Elem y = fj.from_int(1 + rng.uniform(0, 5));
            if (fj.is_zero(y)) y = fj.one();
            nrm = rng.uniform(0, 1) ? y : fj.mul(y, fj.uniformizer());
        } else {
            const QuadField& l = *s.Ls[j].fld;
            QElem y = l.make(fj.from_int(rng.uniform(0, 6)), fj.from_int(rng.uniform(0, 6)));
            if (l.is_zero(y)) y = l.make(fj.one(), fj.one());
            if (l.is_zero(y)) y = l.one();
            nrm = l.norm_to_base(y);
            if (fj.is_zero(nrm)) nrm = fj.one();
        }
        out.comps.push_back(fj.mul(lam.comps[j], nrm));
    }
    return out;
}

std::vector<Instance> build_corpus(const CorpusOpts& opts) {
    std::vector<Instance> out;
    Rng seeder(opts.seed);
    for (const Int& p : opts.primes) {
        for (int shape = 0; shape <= 2; ++shape) {
            std::vector<int> dcls = {1, 2, 3};
            if (opts.include_split_k) dcls.push_back(0);
            for (int dc : dcls) {
                std::uint64_t seed = seeder.next();
                auto setting = build_setting(p, shape, dc, opts.k0, seed);
                // component character lists
                std::vector<std::vector<CompChar>> lists;
                std::size_t combos = 1;
                for (std::size_t j = 0; j < setting->E.comps.size(); ++j) {
                    lists.push_back(component_characters(*setting, j, opts.max_conductor));
                    if (lists.back().empty())
                        throw err("Internal", "no component characters at this conductor bound");
                    combos *= lists.back().size();
                }
                SplitChar mu = minimal_mu(*setting);
                SplitChar mun = split_char_power(*setting, mu, setting->E.degree);
                Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
                for (std::size_t t = 0; t < opts.alphas_per_setting; ++t) {
                    std::size_t pick = static_cast<std::size_t>(rng.next() % combos);
                    std::vector<CompChar> alpha;
                    std::size_t rem = pick;
                    for (std::size_t j = 0; j < lists.size(); ++j) {
                        alpha.push_back(lists[j][rem % lists[j].size()]);
                        rem /= lists[j].size();
                    }
                    Instance inst;
                    inst.setting = setting;
                    inst.alpha = std::move(alpha);
                    inst.chi_w = mu;
                    inst.chi_v = mun;
                    inst.beta_good = make_compatible_beta(*setting, inst.alpha, mu, mun);
                    auto bad = perturb_beta(*setting, inst.beta_good);
                    if (!bad) continue;
                    inst.beta_bad = *bad;
                    inst.tag = "p" + p.str() + "_shape" + std::to_string(shape) + "_d" +
                               std::to_string(dc) + "_a" + std::to_string(t);
                    out.push_back(std::move(inst));
                }
            }
        }
    }
    return out;
}

}  // namespace toric::corpus
