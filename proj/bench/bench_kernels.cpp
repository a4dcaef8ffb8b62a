// Benchmark: parallel kernels against their serial reference
// implementations (conic solubility enumeration, Gauss sums, and the
// corpus sum-check sweep).

#include <chrono>
#include <cstdio>

#include "toric/corpus.hpp"

using namespace toric;
using namespace toric::padic;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_conic() {
    std::printf("%-34s %10s %10s %8s\n", "conic solubility", "serial", "parallel", "speedup");
    for (auto [p, f] : {std::pair<int, int>{7, 2}, {13, 1}, {13, 2}}) {
        auto fld = f == 1 ? Field::make_qp(p, 10) : Field::make_unramified(p, 2, 10);
        ResidueRing ring = solubility_ring(*fld, 1);
        std::vector<Elem> reps = {fld->one(), fld->nonresidue(), fld->uniformizer(),
                                  fld->mul(fld->nonresidue(), fld->uniformizer())};
        auto sweep = [&](bool par) {
            ConicOracle oracle(ring, par);
            int acc = 0;
            for (const auto& a : reps)
                for (const auto& b : reps)
                    acc += oracle.solvable(to_kernel(ring, *fld, a), to_kernel(ring, *fld, b));
            return acc;
        };
        int r1 = 0, r2 = 0;
        double ts = timed([&] { r1 = sweep(false); });
        double tp = timed([&] { r2 = sweep(true); });
        if (r1 != r2) std::printf("  RESULT MISMATCH\n");
        std::printf("  p=%-3d f=%-2d |ring|=%-9zu %9.3fs %9.3fs %7.2fx\n", p, f, ring.size, ts,
                    tp, ts / tp);
    }
}

void bench_gauss() {
    std::printf("%-34s %10s %10s %8s\n", "gauss sums", "reference", "kernel", "speedup");
    for (auto [p, f, level] : {std::tuple<int, int, int>{5, 2, 3}, {7, 2, 3}, {13, 1, 4}}) {
        auto fld = f == 1 ? Field::make_qp(p, 2 * level + 6)
                          : Field::make_unramified(p, 2, 2 * level + 6);
        auto g = std::make_shared<UnitGroup<Field>>(*fld, level);
        auto chi = MulChar<Field>::trivial(g);
        chi.zeta_rot = Rot(1, g->zeta_order());
        if (!g->orders().empty()) chi.basis_rots.back() = Rot(1, g->orders().back());
        chi.validate();
        AddChar<Field> psi = AddChar<Field>::standard(*fld);
        chars::GaussOpts ref, ker;
        ref.use_kernel = false;
        ker.use_kernel = true;
        ker.parallel = true;
        ker.max_terms = 80000000;
        ref.max_terms = 80000000;
        std::complex<double> v1, v2;
        double t1 = timed([&] { v1 = chars::tate_epsilon(*fld, chi, psi, ref); });
        double t2 = timed([&] { v2 = chars::tate_epsilon(*fld, chi, psi, ker); });
        if (std::abs(v1 - v2) > 1e-8) std::printf("  RESULT MISMATCH\n");
        std::printf("  p=%-3d f=%-2d cond=%-5d        %9.3fs %9.3fs %7.2fx\n", p, f,
                    chi.conductor(), t1, t2, t1 / t2);
    }
}

void bench_sumcheck() {
    std::printf("%-34s %10s %10s %8s\n", "corpus sum-check", "serial", "parallel", "speedup");
    corpus::CorpusOpts opts;
    opts.primes = {5};
    opts.alphas_per_setting = 3;
    auto insts = corpus::build_corpus(opts);
    auto sweep = [&](bool par) {
        chars::GaussOpts g;
        g.parallel = par;
        int acc = 0;
        for (const auto& inst : insts)
            acc += dichotomy::sum_check(*inst.setting, inst.alpha, inst.beta_good, inst.chi_w,
                                        inst.chi_v, g)
                       .total;
        return acc;
    };
    int r1 = 0, r2 = 0;
    double ts = timed([&] { r1 = sweep(false); });
    double tp = timed([&] { r2 = sweep(true); });
    if (r1 != r2) std::printf("  RESULT MISMATCH\n");
    std::printf("  %zu instances                %9.3fs %9.3fs %7.2fx\n", insts.size(), ts, tp,
                ts / tp);
}

}  // namespace

int main() {
    bench_conic();
    bench_gauss();
    bench_sumcheck();
    return 0;
}
