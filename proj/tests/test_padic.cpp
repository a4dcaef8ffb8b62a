#include <doctest.h>

#include "toric/padic.hpp"

using namespace toric;
using namespace toric::padic;

TEST_CASE("field construction and validation") {
    auto q5 = Field::make_qp(5, 6);
    CHECK(q5->q() == 5);
    CHECK(q5->degree() == 1);

    auto u3 = Field::make_unramified(3, 2, 6);
    CHECK(u3->q() == 9);
    CHECK(u3->e() == 1);

    // ramified quadratic: v(root) = 1, e*f = 2, N(pi) ~ -(-5) checked by the
    // multiplication-matrix norm oracle
    auto r5 = Field::make_eisenstein(5, 1, {-5, 0, 1}, 8);
    CHECK(r5->e() == 2);
    CHECK(r5->degree() == 2);
    Elem pi = r5->uniformizer();
    CHECK(r5->val(pi).value() == 1);
    QpNum n = r5->norm_to_qp(pi);
    // product of the roots of x^2 - 5 is -5
    CHECK(mod_floor(n.c + 5, pow_int(5, 3)) == 0);
    CHECK(r5->eq(r5->mul(pi, pi), r5->from_int(5)));

    CHECK_THROWS_WITH_AS(Field::make_qp(2, 4), doctest::Contains("p = 2"), ToricError);
    CHECK_THROWS_AS(Field::make_qp(9, 4), ToricError);
    CHECK_THROWS_AS(Field::make_eisenstein(5, 1, {-1, 1}, 4), ToricError);   // not Eisenstein
    CHECK_THROWS_AS(Field::make_eisenstein(5, 1, {-25, 1}, 4), ToricError);  // v(const) = 2
}

TEST_CASE("element arithmetic") {
    auto q5 = Field::make_qp(5, 4);
    Elem x = q5->from_int(17);
    CHECK(q5->eq(q5->add(x, q5->zero()), x));
    CHECK(q5->val(q5->mul(q5->uniformizer(), q5->from_int(3))).value() == 1);

    // modular inverse oracle: 2 * 313 = 626 = 1 mod 625
    Elem i2 = q5->inv(q5->from_int(2));
    CHECK(i2.c[0] == 313);
    CHECK(q5->eq(q5->mul(i2, q5->from_int(2)), q5->one()));

    CHECK_THROWS_AS(q5->inv(q5->zero()), ToricError);
}

TEST_CASE("ring axioms hold exactly on random triples") {
    Rng rng(11);
    for (auto fld : {Field::make_qp(3, 7), Field::make_unramified(3, 2, 7),
                     Field::make_eisenstein(7, 1, {-7, 0, 1}, 7)}) {
        auto rand_el = [&]() {
            std::vector<Int> c(static_cast<std::size_t>(fld->degree()));
            for (auto& ci : c) ci = rng.uniform(0, 2000);
            return fld->from_coeffs(c);
        };
        for (int t = 0; t < 120; ++t) {
            Elem a = rand_el(), b = rand_el(), c = rand_el();
            CHECK(fld->eq(fld->mul(fld->mul(a, b), c), fld->mul(a, fld->mul(b, c))));
            CHECK(fld->eq(fld->mul(a, fld->add(b, c)),
                          fld->add(fld->mul(a, b), fld->mul(a, c))));
            CHECK(fld->eq(fld->mul(a, b), fld->mul(b, a)));
            // canonical representation: equal elements have equal vectors
            Elem lhs = fld->mul(fld->add(a, b), c);
            Elem rhs = fld->add(fld->mul(a, c), fld->mul(b, c));
            CHECK(lhs.c == rhs.c);
            CHECK(lhs.shift == rhs.shift);
        }
    }
}

TEST_CASE("valuation is a discrete valuation") {
    auto f = Field::make_eisenstein(3, 1, {-3, 0, 1}, 9);
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        std::vector<Int> ca = {Int(rng.uniform(0, 26)), Int(rng.uniform(0, 26))};
        std::vector<Int> cb = {Int(rng.uniform(0, 26)), Int(rng.uniform(0, 26))};
        Elem a = f->from_coeffs(ca), b = f->from_coeffs(cb);
        auto va = f->val(a), vb = f->val(b);
        if (!va || !vb) continue;
        auto vab = f->val(f->mul(a, b));
        if (vab) CHECK(*vab == *va + *vb);
        auto vs = f->val(f->add(a, b));
        if (vs) {
            CHECK(*vs >= std::min(*va, *vb));
            if (*va != *vb) CHECK(*vs == std::min(*va, *vb));
        }
    }
}

TEST_CASE("norm and trace against the multiplication matrix") {
    auto u3 = Field::make_unramified(3, 2, 8);
    // trace of the identity is the degree
    QpNum t1 = u3->trace_to_qp(u3->one());
    CHECK(t1.c == 2);
    // N(p) = p^2 for a central element
    QpNum np = u3->norm_to_qp(u3->from_int(3));
    CHECK(mod_floor(np.c - 9, pow_int(3, 5)) == 0);
    // multiplicativity / additivity on random pairs
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Elem a = u3->from_coeffs({Int(rng.uniform(0, 80)), Int(rng.uniform(0, 80))});
        Elem b = u3->from_coeffs({Int(rng.uniform(0, 80)), Int(rng.uniform(0, 80))});
        if (u3->is_zero(a) || u3->is_zero(b)) continue;
        QpNum na = u3->norm_to_qp(a), nb = u3->norm_to_qp(b), nab = u3->norm_to_qp(u3->mul(a, b));
        Int mod = pow_int(3, 4);
        CHECK(mod_floor(na.c * nb.c - nab.c, mod) == 0);
        QpNum ta = u3->trace_to_qp(a), tb = u3->trace_to_qp(b), tab = u3->trace_to_qp(u3->add(a, b));
        CHECK(mod_floor(ta.c + tb.c - tab.c, mod) == 0);
    }
}

TEST_CASE("different exponent by trace enumeration") {
    // the largest ideal pi^{-k} with trace inside Z_p has k = d(M/Q_p)
    for (auto [fld, expect] :
         std::vector<std::pair<padic::FieldPtr, long>>{{Field::make_unramified(5, 2, 8), 0},
                                                       {Field::make_eisenstein(5, 1, {-5, 0, 1}, 8), 1},
                                                       {Field::make_eisenstein(3, 1, {-3, 0, 1}, 8), 1}}) {
        CHECK(fld->different_exp() == expect);
        long k = 0;
        for (; k <= 4; ++k) {
            // does pi^{-(k+1)} O still have integral trace?
            bool integral = true;
            for (int s = 0; s < fld->degree(); ++s) {
                std::vector<Int> c(static_cast<std::size_t>(fld->degree()), 0);
                c[static_cast<std::size_t>(s)] = 1;
                Elem b = fld->shift_pi(fld->from_coeffs(c), -(k + 1));
                if (!fld->trace_rot(b).is_zero()) integral = false;
            }
            if (!integral) break;
        }
        CHECK(k == expect);
    }
}

TEST_CASE("unramified subfield traces") {
    auto f = Field::make_eisenstein(3, 2, {-3, 0, 1}, 6);  // e = 2, f = 2
    CHECK(f->degree() == 4);
    const Field& u = f->unram_subfield();
    CHECK(u.degree() == 2);
    Elem x = f->embed_unram(u.gen_w());
    Elem tr = f->trace_to_unram(x);            // trace of a U-element over U is 2x
    CHECK(u.eq(tr, u.mul(u.gen_w(), u.from_int(2))));
    Elem nm = f->norm_to_unram(f->uniformizer());  // product of roots of x^2 - 3
    CHECK(u.eq(nm, u.from_int(-3)));
}
