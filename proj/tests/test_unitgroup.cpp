#include <doctest.h>

#include "toric/charkit.hpp"
#include "toric/etale.hpp"

using namespace toric;
using namespace toric::padic;
using namespace toric::quadext;

TEST_CASE("unit group orders against brute enumeration") {
    // Q_3 at level 3: units of Z/27 have order 18
    auto q3 = Field::make_qp(3, 10);
    UnitGroup<Field> g(*q3, 3);
    long brute = 0;
    for (int x = 1; x < 27; ++x)
        if (x % 3 != 0) ++brute;
    CHECK(Int(brute) == g.finite_order());
    CHECK(g.zeta_order() == 2);

    // Q_5 at level 1: cyclic of order 4
    auto q5 = Field::make_qp(5, 8);
    UnitGroup<Field> g5(*q5, 1);
    CHECK(g5.finite_order() == 4);
    CHECK(g5.orders().empty());
}

TEST_CASE("discrete log round trip") {
    Rng rng(23);
    auto q5 = Field::make_qp(5, 12);
    UnitGroup<Field> g(*q5, 3);
    for (int t = 0; t < 40; ++t) {
        DLog<Field> d{Int(rng.uniform(-3, 3)), Int(rng.uniform(0, 3)),
                      {}};
        for (const Int& o : g.orders()) d.basis_exps.push_back(Int(rng.uniform(0, 100)) % o);
        Elem x = g.recombine(d);
        DLog<Field> d2 = g.dlog(x);
        CHECK(d2.pi_exp == d.pi_exp);
        CHECK(d2.zeta_exp == mod_floor(d.zeta_exp, g.zeta_order()));
        for (std::size_t i = 0; i < d.basis_exps.size(); ++i)
            CHECK(d2.basis_exps[i] == mod_floor(d.basis_exps[i], g.orders()[i]));
    }
    // quadratic extension
    QuadField K(q5, q5->from_int(2));
    UnitGroup<QuadField> gk(K, 2);
    CHECK(gk.zeta_order() == 24);
    for (int t = 0; t < 20; ++t) {
        auto x = K.make(q5->from_int(rng.uniform(0, 100)), q5->from_int(rng.uniform(0, 100)));
        if (K.is_zero(x)) continue;
        auto d = gk.dlog(x);
        auto y = gk.recombine(d);
        auto dq = gk.dlog(K.div(x, y));
        CHECK(dq.pi_exp == 0);
        CHECK(dq.zeta_exp == 0);
        for (const auto& e : dq.basis_exps) CHECK(e == 0);
    }
}

TEST_CASE("norm-one character count") {
    auto q5 = Field::make_qp(5, 12);
    QuadField K(q5, q5->from_int(2));
    auto gk = std::make_shared<UnitGroup<QuadField>>(K, 2);
    UnitGroup<Field> gf(*q5, 2);
    std::vector<QElem> sub;
    sub.push_back(K.from_base(gf.uniformizer()));
    sub.push_back(K.from_base(gf.zeta()));
    for (const auto& b : gf.basis()) sub.push_back(K.from_base(b));
    auto duals = quotient_dual<QuadField>(gk, sub);
    // |K^1 / (level-2 principal part)| = (q + 1) q = 30
    CHECK(duals.size() == 30);
    for (const auto& c : duals)
        for (const auto& s : sub) CHECK(c.value(s).rot.is_zero());
}

TEST_CASE("character with prescribed restriction") {
    auto q7 = Field::make_qp(7, 12);
    QuadField K(q7, q7->from_int(7 * 3));  // ramified: 3 is a nonresidue mod 7
    auto gk = std::make_shared<UnitGroup<QuadField>>(K, 2 * K.abs_e());
    UnitGroup<Field> gf(*q7, 2);
    std::vector<QElem> elems;
    std::vector<Rot> targets;
    auto push = [&](const Elem& g) {
        elems.push_back(K.from_base(g));
        targets.push_back(hilbert_symbol(*q7, g, K.d()) == 1 ? Rot() : Rot(1, 2));
    };
    push(gf.uniformizer());
    push(gf.zeta());
    for (const auto& b : gf.basis()) push(b);
    auto mu = character_with_values<QuadField>(gk, elems, targets);
    for (std::size_t i = 0; i < elems.size(); ++i) CHECK(mu.value(elems[i]).rot == targets[i]);
}
