#include "doctest.h"

#include "tubencr/quivalg.hpp"
#include "tubencr/twcat.hpp"

using namespace tubencr;

TEST_CASE("half-twist tables satisfy the A-infinity relations") {
    for (int n = 2; n <= 5; ++n) {
        for (Wrapping w : {Wrapping::left, Wrapping::right}) {
            auto t = halftwist_tables(n, w);
            auto rep = ainf_check(t, 4);
            CHECK(rep.degree_errors.empty());
            CHECK(rep.violations.empty());
            CHECK(rep.tuples_checked > 100);
        }
    }
}

TEST_CASE("mu3 entries per wrapping") {
    auto l = halftwist_tables(3, Wrapping::left);
    auto r = halftwist_tables(3, Wrapping::right);
    CHECK(l.format(l.entry({"alpha'", "p", "b0"})) == "id_L1");
    CHECK(r.format(r.entry({"alpha'", "p", "b0"})) == "id_L1");
    CHECK(l.format(l.entry({"beta'", "p", "a3"})) == "id_L3");
    CHECK(l.format(l.entry({"b0", "alpha'", "p"})) == "id_L0");
    CHECK(l.format(l.entry({"a3", "beta'", "p"})) == "0");
    CHECK(r.format(r.entry({"a3", "beta'", "p"})) == "id_L0");
    CHECK(r.format(r.entry({"b0", "alpha'", "p"})) == "0");
    CHECK(l.format(l.entry({"beta'", "p", "b0"})) == "0");
    CHECK(l.format(l.entry({"b0", "alpha'"})) == "pbar");
    // Strict units.
    CHECK(l.format(l.entry({"b0", "id_L1"})) == "b0");
    CHECK(l.format(l.entry({"id_L0", "b0", "alpha'"})) == "0");
}

TEST_CASE("negative control: a missing mu3 entry breaks the relations") {
    auto t = halftwist_tables(2, Wrapping::left);
    t.set_mu({"alpha'", "p", "b0"}, {"0"});
    CHECK_FALSE(ainf_check(t, 4).ok);
    auto u = halftwist_tables(2, Wrapping::left);
    u.set_mu({"b0", "alpha'"}, {"0"});
    CHECK_FALSE(ainf_check(u, 4).ok);
}

TEST_CASE("degree errors are reported") {
    auto t = halftwist_tables(2, Wrapping::left);
    t.set_mu({"p", "b0", "alpha'"}, {"0"});
    AInfTable bad = halftwist_tables(2, Wrapping::right);
    bad.set_mu({"b0", "alpha'"}, {"0"});
    bad.set_mu({"pbar", "p"}, {"id_L0"});
    CHECK_FALSE(ainf_check(bad, 2).degree_errors.empty());
}

TEST_CASE("positive control: tube algebra as a table") {
    // t = 0 over F2 makes every relation length-homogeneous, so paths of
    // length > 3 span an ideal and the truncation is an honest algebra.
    auto r = PolyRing::tube_coefficients(Field::prime(2), 2);
    auto tube = tube_algebra(2, r).base_change(
        RingMap(r, r, std::vector<Poly>(3, r.zero())));
    AInfTable t(r, {"0", "1", "2"});
    std::map<Path, int> index;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (const auto& p : tube.graded_basis(i, j, 0, 3)) {
                if (p.is_lazy()) {
                    index[p] = t.identity(i);
                } else {
                    index[p] = t.add_morphism(tube.format(p), std::to_string(i), std::to_string(j), 0);
                }
            }
        }
    }
    for (const auto& [p, ip] : index) {
        for (const auto& [q, iq] : index) {
            if (p.is_lazy() || q.is_lazy()) continue;
            auto c = tube.compose(q, p);
            if (!c) continue;
            Combination value;
            for (const auto& [w, coef] : tube.normal_form(*c).terms) {
                if (w.length() <= 3) value.emplace(index.at(w), coef);
            }
            t.set_mu(std::vector<int>{iq, ip}, value);
        }
    }
    CHECK(t.max_arity() == 2);
    auto rep = ainf_check(t, 3);
    CHECK(rep.ok);
    CHECK(rep.tuples_checked > 1000);
}

TEST_CASE("half-twist is an equivalence") {
    for (int n = 2; n <= 5; ++n) {
        auto reps = verify_halftwist(n);
        REQUIRE(reps.size() == 2);
        for (const auto& rep : reps) {
            CHECK(rep.table_ok);
            CHECK(rep.complexes_ok);
            CHECK(rep.morphisms_closed);
            CHECK(rep.q2q1_identity);
            CHECK(rep.q1q2_identity);
            CHECK(rep.degree_vanishing);
            CHECK(rep.failures.empty());
        }
        CHECK(reps[0].q1q2 == "[id_P]");
        CHECK(reps[0].q2q1 == "[id_L1, 0, 0; 0, id_L" + std::to_string(n) + ", 0; 0, 0, id_L0]");
    }
    CHECK_THROWS(halftwist_tables(1, Wrapping::left));
}

TEST_CASE("corrupted q2 loses an identity block") {
    auto d = halftwist_data(3, Wrapping::left);
    d.q2.entries.erase({1, 0});
    auto rep = verify_halftwist(d);
    CHECK_FALSE(rep.q2q1_identity);
    CHECK_FALSE(rep.passed());
    CHECK(rep.q2q1.find("id_L3") == std::string::npos);
    auto e = halftwist_data(3, Wrapping::right);
    e.q1.entries.clear();
    CHECK_FALSE(verify_halftwist(e).q1q2_identity);
}

TEST_CASE("object images under psi and rho") {
    for (int n = 2; n <= 6; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                ObjectImage x = psi_image(n, i, j);
                CHECK(rho(n, x) == psi_image(n, i + 1, j + 1));
                ObjectImage y = x;
                for (int k = 0; k <= n; ++k) y = rho(n, y);
                CHECK(y == x);
            }
        }
    }
    CHECK(format_image(psi_image(3, 0, 0)) == "(L1 + L3 --(b0,a3)--> L0)");
    CHECK(format_image(psi_image(3, 0, 2)) == "L2");
    auto r = PolyRing::tube_coefficients(Field::rationals(), 3);
    auto rc = rho_coefficients(r);
    Poly f = Poly::parse(r, "t0^2*t1 + t3");
    Poly g = f;
    for (int k = 0; k < 4; ++k) g = rc.apply(g);
    CHECK(g == f);
    CHECK(rc.apply(f) == Poly::parse(r, "t1^2*t2 + t0"));
}
