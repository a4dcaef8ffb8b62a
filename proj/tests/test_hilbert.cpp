#include <doctest.h>

#include "toric/hilbert.hpp"
#include "toric/residue_ring.hpp"
#include "toric/etale.hpp"

using namespace toric;
using namespace toric::padic;

TEST_CASE("square classes") {
    auto q5 = Field::make_qp(5, 8);
    CHECK(square_class(*q5, q5->from_int(9)).cls == SquareClass::One);
    // squares mod 5 are {1, 4}: 2 is a non-residue
    CHECK(square_class(*q5, q5->from_int(2)).cls == SquareClass::U);
    Elem x = q5->from_int(7);
    CHECK(square_class(*q5, q5->mul(q5->mul(x, x), q5->uniformizer())).cls == SquareClass::Pi);
    CHECK_THROWS_AS(square_class(*q5, q5->zero()), ToricError);
}

TEST_CASE("square class group has order four") {
    for (auto fld : {Field::make_qp(3, 8), Field::make_unramified(5, 2, 8),
                     Field::make_eisenstein(7, 1, {-7, 0, 1}, 8)}) {
        // exhaust unit square classes over residue representatives
        std::set<SquareClass> seen;
        for (std::int64_t i = 1; i < static_cast<std::int64_t>(fld->q()); ++i)
            seen.insert(square_class(*fld, fld->residue_lift(i)).cls);
        CHECK(seen.size() == 2);  // unit part: {1, u}
        seen.clear();
        for (std::int64_t i = 1; i < static_cast<std::int64_t>(fld->q()); ++i) {
            seen.insert(square_class(*fld, fld->residue_lift(i)).cls);
            seen.insert(
                square_class(*fld, fld->mul(fld->residue_lift(i), fld->uniformizer())).cls);
        }
        CHECK(seen.size() == 4);
    }
}

TEST_CASE("hilbert symbol values and bilinearity") {
    auto q5 = Field::make_qp(5, 8);
    auto q3 = Field::make_qp(3, 8);
    for (const Elem& b : {q5->from_int(2), q5->from_int(5), q5->from_int(10)})
        CHECK(hilbert_symbol(*q5, q5->one(), b) == 1);
    CHECK(hilbert_symbol(*q5, q5->from_int(5), q5->from_int(2)) == -1);
    CHECK(hilbert_symbol(*q3, q3->from_int(-1), q3->from_int(-1)) == 1);

    for (auto fld : {Field::make_qp(3, 8), Field::make_qp(7, 8)}) {
        std::vector<Elem> reps = {fld->one(), fld->nonresidue(), fld->uniformizer(),
                                  fld->mul(fld->nonresidue(), fld->uniformizer())};
        for (const Elem& a : reps) {
            bool nondeg = false;
            for (const Elem& b : reps) {
                CHECK(hilbert_symbol(*fld, a, b) == hilbert_symbol(*fld, b, a));
                for (const Elem& c : reps)
                    CHECK(hilbert_symbol(*fld, fld->mul(a, b), c) ==
                          hilbert_symbol(*fld, a, c) * hilbert_symbol(*fld, b, c));
                if (!fld->eq(a, fld->one()) && hilbert_symbol(*fld, a, b) == -1) nondeg = true;
            }
            if (!fld->eq(a, fld->one())) CHECK(nondeg);
        }
    }
}

TEST_CASE("tame symbol agrees with the solubility kernel (parallel and serial)") {
    auto q7 = Field::make_qp(7, 8);
    ResidueRing ring = solubility_ring(*q7, 1);
    ConicOracle par(ring, true);
    ConicOracle ser(ring, false);
    std::vector<Elem> reps = {q7->one(), q7->nonresidue(), q7->uniformizer(),
                              q7->mul(q7->nonresidue(), q7->uniformizer())};
    for (const Elem& a : reps)
        for (const Elem& b : reps) {
            int tame = hilbert_symbol(*q7, a, b);
            bool sp = par.solvable(to_kernel(ring, *q7, a), to_kernel(ring, *q7, b));
            bool ss = ser.solvable(to_kernel(ring, *q7, a), to_kernel(ring, *q7, b));
            CHECK(sp == ss);
            CHECK(tame == (sp ? 1 : -1));
        }
}

TEST_CASE("norm class indicator") {
    auto q5 = Field::make_qp(5, 10);
    // split algebra: always +1
    etale::QuadEtale sp = etale::quad_etale_structure(q5, q5->from_int(4));
    CHECK(sp.split);
    CHECK(etale::norm_class_indicator(*q5, q5->from_int(5), sp) == 1);
    // inert d = 2: norms are detected by the symbol
    etale::QuadEtale in = etale::quad_etale_structure(q5, q5->from_int(2));
    CHECK(!in.split);
    CHECK(etale::norm_class_indicator(*q5, q5->from_int(5), in) == -1);
    // norms are norms
    Rng rng(17);
    const quadext::QuadField& L = *in.fld;
    for (int t = 0; t < 40; ++t) {
        auto y = L.make(q5->from_int(rng.uniform(0, 30)), q5->from_int(rng.uniform(0, 30)));
        if (L.is_zero(y)) continue;
        Elem n = L.norm_to_base(y);
        if (q5->is_zero(n)) continue;
        CHECK(etale::norm_class_indicator(*q5, n, in) == 1);
    }
    // index-2 subgroup at level k: count norms among unit representatives
    int plus = 0, minus = 0;
    for (std::int64_t i = 1; i < 5; ++i) {
        for (int v = 0; v < 2; ++v) {
            Elem x = q5->mul(q5->residue_lift(i), q5->pow_i(q5->uniformizer(), v));
            (etale::norm_class_indicator(*q5, x, in) == 1 ? plus : minus)++;
        }
    }
    CHECK(plus == minus);
}
