// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstring>
#include <iostream>

#include "toric/corpus.hpp"
#include "toric/globalq.hpp"
#include "toric/json_io.hpp"

using namespace toric;
using namespace toric::padic;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail = "") {
    std::cout << "criterion " << idx << " [" << name << "]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Hilbert-symbol oracle equivalence, p in {3,5,7,13}, three fields each,
//    all 16 square-class pairs, < 60 s.
void criterion1() {
    auto t0 = Clock::now();
    int checked = 0, bad = 0;
    for (int p : {3, 5, 7, 13}) {
        std::vector<padic::FieldPtr> fields = {
            Field::make_qp(p, 10), Field::make_unramified(p, 2, 10),
            Field::make_eisenstein(p, 1, {-p, 0, 1}, 10)};
        for (const auto& fld : fields) {
            ResidueRing ring = solubility_ring(*fld, 1);
            ConicOracle oracle(ring, true);
            std::vector<Elem> reps = {fld->one(), fld->nonresidue(), fld->uniformizer(),
                                      fld->mul(fld->nonresidue(), fld->uniformizer())};
            for (const Elem& a : reps)
                for (const Elem& b : reps) {
                    int tame = hilbert_symbol(*fld, a, b);
                    int brute =
                        oracle.solvable(to_kernel(ring, *fld, a), to_kernel(ring, *fld, b)) ? 1
                                                                                            : -1;
                    ++checked;
                    if (tame != brute) ++bad;
                }
        }
    }
    double dt = seconds_since(t0);
    report(1, "hilbert oracle equivalence", bad == 0 && dt < 60.0 && checked == 192,
           std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches, " +
               std::to_string(dt) + " s");
}

struct CorpusRun {
    std::vector<corpus::Instance> instances;
    int sum_violations = 0;
    std::size_t n_instances = 0;
    double max_imag = 0.0;
    double runtime = 0.0;
    int conj_violations = 0;
};

// 2/4/6 share the corpus sweep.
CorpusRun run_corpus() {
    CorpusRun out;
    auto t0 = Clock::now();
    corpus::CorpusOpts opts;
    opts.primes = {3, 5, 7};
    opts.alphas_per_setting = 6;
    opts.seed = 2024;
    out.instances = corpus::build_corpus(opts);
    chars::GaussOpts gopts;
    Rng rng(4242);
    for (const auto& inst : out.instances) {
        const auto& s = *inst.setting;
        // raw epsilon entries for the sign guarantee
        auto es = dichotomy::epsilon_complex_entries(s, inst.alpha, inst.chi_w, gopts);
        for (const auto& e : es) out.max_imag = std::max(out.max_imag, std::abs(e.imag()));
        auto good = dichotomy::sum_check(s, inst.alpha, inst.beta_good, inst.chi_w, inst.chi_v,
                                         gopts);
        auto badr = dichotomy::sum_check(s, inst.alpha, inst.beta_bad, inst.chi_w, inst.chi_v,
                                         gopts);
        if (good.total != 1) ++out.sum_violations;
        if (badr.total != 0) ++out.sum_violations;
        // conjugation invariance: scale every row's lambda by norms
        auto eps = dichotomy::epsilon_sign_vector(s, inst.alpha, inst.chi_w, gopts);
        for (const auto& row : good.rows) {
            for (int t = 0; t < 20; ++t) {
                auto lam2 = corpus::scale_lambda_by_norm(s, row.lambda, rng);
                auto om2 = etale::omega_vector(s.E, lam2, s.Ls);
                int dim2 = (om2 == eps) ? 1 : 0;  // compatibility held for beta_good
                if (dim2 != row.dim) ++out.conj_violations;
            }
        }
        out.n_instances += 2;  // good and bad beta variants
    }
    out.runtime = seconds_since(t0);
    return out;
}

void criterion3() {
    Rng rng(333);
    int bad = 0, n = 0;
    for (int p : {3, 5, 7}) {
        auto qp = Field::make_qp(p, 12);
        auto u = Field::make_unramified(p, 2, 12);
        auto r = Field::make_eisenstein(p, 1, {-p, 0, 1}, 12);
        std::vector<etale::EtaleAlgebra> shapes = {
            etale::make_etale(qp, {qp, qp}), etale::make_etale(qp, {u}),
            etale::make_etale(qp, {r}), etale::make_etale(qp, {qp, u})};
        auto k = etale::quad_etale_structure(qp, qp->nonresidue());
        int per_prime = 0;
        while (per_prime < 50) {
            const auto& e = shapes[rng.uniform(0, static_cast<long>(shapes.size()) - 1)];
            etale::LambdaVector lam;
            bool ok = true;
            for (const auto& fj : e.comps) {
                std::vector<Int> c(static_cast<std::size_t>(fj->degree()));
                for (auto& ci : c) ci = rng.uniform(0, 300);
                Elem x = fj->from_coeffs(c);
                if (rng.uniform(0, 1)) x = fj->mul(x, fj->uniformizer());
                if (fj->is_zero(x)) ok = false;
                lam.comps.push_back(x);
            }
            if (!ok) continue;
            ++per_prime;
            ++n;
            auto dr = etale::disc_hermitian_lambda(e, lam, k);
            Elem gram = etale::disc_hermitian_gram(e, lam);
            // class equality in F^x / N(K^x) and exact element equality
            if (dr.sign != hilbert_symbol(*qp, gram, k.d_given)) ++bad;
            if (!qp->eq(dr.disc, gram)) ++bad;
        }
    }
    report(3, "discriminant formula vs Gram oracle", bad == 0,
           std::to_string(n) + " samples, " + std::to_string(bad) + " violations");
}

void criterion5() {
    double worst = 0.0;
    for (int p : {3, 5, 7, 11, 13}) {
        auto qp = Field::make_qp(p, 12);
        auto g = std::make_shared<UnitGroup<Field>>(*qp, 2);
        auto chi = MulChar<Field>::trivial(g);
        chi.zeta_rot = Rot(1, 2);
        AddChar<Field> psi = AddChar<Field>::standard(*qp);
        auto eps = chars::tate_epsilon(*qp, chi, psi);
        // direct classical Gauss sum
        std::complex<double> gsum(0, 0);
        for (long u = 1; u < p; ++u) {
            long t = 1;
            for (int k = 0; k < (p - 1) / 2; ++k) t = t * u % p;
            int leg = (t == 1) ? 1 : -1;
            double ang = 2 * M_PI * u / p;
            gsum += std::complex<double>(leg * std::cos(ang), leg * std::sin(ang));
        }
        gsum /= std::sqrt(static_cast<double>(p));
        worst = std::max(worst, std::abs(eps - gsum));
    }
    report(5, "gauss-sum normalization", worst < 1e-9, "max deviation " + std::to_string(worst));
}

void criterion7() {
    using namespace toric::globalq;
    Rng rng(777);
    Int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        auto rnd = [&]() {
            Int x = 1;
            for (int i = 0; i < 3; ++i)
                if (rng.uniform(0, 1)) x *= primes[rng.uniform(0, 14)];
            if (rng.uniform(0, 1)) x = -x;
            return Rat{x, primes[rng.uniform(0, 14)]};
        };
        if (hilbert_product(rnd(), rnd()) != 1) ++bad;
    }
    // lambda search verified per place, and the parity error path
    bool search_ok = true;
    try {
        // places 3, 5, 7 are non-split in Q(sqrt -7), so these sign
        // patterns are realizable (the product of each set is +1)
        std::vector<std::map<Place, int>> targets(2);
        targets[0][Int(3)] = -1;
        targets[0][Int(7)] = -1;
        targets[1][kInfinity] = -1;
        targets[1][Int(5)] = -1;
        auto lam = find_lambda(targets, -7);
        for (std::size_t j = 0; j < lam.size(); ++j)
            for (const auto& [v, sgn] : targets[j])
                if (hilbert_symbol_rational(lam[j], Rat{Int(-7), 1}, v) != sgn) search_ok = false;
    } catch (const ToricError&) {
        search_ok = false;
    }
    bool parity_ok = false;
    try {
        std::vector<std::map<Place, int>> bad_targets(1);
        bad_targets[0][Int(13)] = -1;
        find_lambda(bad_targets, -7);
    } catch (const ToricError& e) {
        parity_ok = (e.kind == "ParityObstruction");
    }
    report(7, "hilbert reciprocity and lambda search", bad == 0 && search_ok && parity_ok,
           std::to_string(bad) + " reciprocity violations");
}

void criterion8() {
    using namespace toric::globalq;
    auto K = std::make_shared<ImagQuad>(-7);
    KElem mu_mod{-1, 2};
    auto mu = std::make_shared<HeckeChar>(
        K, mu_mod, std::vector<std::pair<KElem, Rot>>{{KElem{3, 0}, Rot(1, 2)}}, 1);
    GlobalSetup s;
    s.k = K;
    s.n = 2;
    s.mu = mu;
    s.alpha = {mu, mu};
    s.beta = std::make_shared<HeckeChar>(mu->times(*mu));
    s.delta_t = Rat{1, 1};
    std::vector<Rat> probe = {Rat{1, 1}, Rat{1, 1}};
    std::vector<std::map<Place, int>> targets(2);
    for (const auto& v : bad_places(s, probe)) {
        auto pr = place_report(s, probe, v);
        for (int j = 0; j < 2; ++j)
            if (pr.epsilon[j] != 1) targets[j][pr.v] = pr.epsilon[j];
    }
    auto lam = find_lambda(targets, -7);
    bool fixture1, fixture2, fixture3;
    {
        auto rep = global_decision(s, lam, std::complex<double>(0.0, 0.0));
        fixture1 = !rep.verdict && !rep.lvalue_ok && rep.places_ok && rep.compat;
    }
    {
        std::vector<Rat> wrong = lam;
        wrong[0] = Rat{wrong[0].num * 3, wrong[0].den};
        auto rep = global_decision(s, wrong, std::complex<double>(0.9, 0.0));
        fixture2 = !rep.verdict && !rep.places_ok;
    }
    {
        auto rep = global_decision(s, lam, std::complex<double>(0.9, 0.0));
        fixture3 = rep.verdict && rep.compat && rep.places_ok && rep.lvalue_ok;
    }
    report(8, "global decision gates", fixture1 && fixture2 && fixture3,
           std::string("zero value: ") + (fixture1 ? "ok" : "bad") +
               ", failing place: " + (fixture2 ? "ok" : "bad") +
               ", all-pass: " + (fixture3 ? "ok" : "bad"));
}

void criterion9() {
    Rng rng(909);
    int bad = 0, n = 0;
    for (int p : {3, 5, 7, 13}) {
        auto qp = Field::make_qp(p, 12);
        for (int dc = 1; dc <= 3; ++dc) {
            Elem d = dc == 1 ? qp->nonresidue()
                             : (dc == 2 ? qp->uniformizer()
                                        : qp->mul(qp->nonresidue(), qp->uniformizer()));
            auto k = etale::quad_etale_structure(qp, d);
            const quadext::QuadField& K = *k.fld;
            quadext::QElem delta =
                K.make(qp->zero(), qp->mul(qp->from_int(1 + rng.uniform(0, 3)), k.scale));
            for (int t = 0; t < 100; ++t) {
                Elem b = qp->from_int(rng.uniform(0, 500));
                ++n;
                auto lhs = etale::q_delta_expression(K, b, delta);
                auto rhs = K.mul(K.from_base(b), delta);
                if (!K.eq(lhs, rhs)) ++bad;
            }
        }
    }
    report(9, "trace-zero identity", bad == 0,
           std::to_string(n) + " samples, " + std::to_string(bad) + " violations");
}

void criterion10(bool enabled) {
    using namespace toric::globalq;
    if (!enabled) {
        std::cout << "criterion 10 [l-value evaluator]: SKIPPED (feature disabled)" << std::endl;
        return;
    }
    auto K = std::make_shared<ImagQuad>(-7);
    // five conjugate-symplectic characters of Q(sqrt -7): the quadratic
    // finite part modulo sqrt(-7) with odd archimedean exponents
    std::vector<HeckeChar> chars_list;
    KElem rt{-1, 2};  // sqrt(-7)
    for (long w : {1, -1, 3, -3, 5})
        chars_list.push_back(HeckeChar(K, rt, {{KElem{3, 0}, Rot(1, 2)}}, w));
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < chars_list.size(); ++i) {
        try {
            HeckeChar prim = chars_list[i].primitive_char();
            prim.validate_conjugate_symplectic();
            // the evaluator itself enforces the two-cutoff agreement < 1e-6
            auto L = l_value_half(prim, 1e-6);
            if (std::abs(L.imag()) >= 1e-6) ok = false;
            detail += (i ? ", " : "") + std::to_string(L.real());
        } catch (const ToricError& e) {
            ok = false;
            detail += std::string(" [") + e.what() + "]";
        }
    }
    report(10, "l-value evaluator", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    bool lvalue_enabled = true;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--disable-lvalue") == 0) lvalue_enabled = false;

    criterion1();

    CorpusRun cr = run_corpus();
    report(2, "sum formula over the corpus",
           cr.sum_violations == 0 && cr.n_instances >= 200 && cr.runtime < 300.0,
           std::to_string(cr.n_instances) + " instances, " +
               std::to_string(cr.sum_violations) + " violations, " +
               std::to_string(cr.runtime) + " s");
    criterion3();
    report(4, "epsilon entries are signs", cr.max_imag < 1e-9,
           "max |imag| = " + std::to_string(cr.max_imag));
    criterion5();
    report(6, "conjugation invariance", cr.conj_violations == 0,
           std::to_string(cr.conj_violations) + " violations");
    criterion7();
    criterion8();
    criterion9();
    criterion10(lvalue_enabled);

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
