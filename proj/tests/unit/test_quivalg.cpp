#include "doctest.h"

#include <set>

#include "tubencr/quivalg.hpp"

using namespace tubencr;

namespace {

PolyRing tring(int n) { return PolyRing::tube_coefficients(Field::rationals(), n); }

// Closed form: one a-path and one b-path per winding, plus the lazy path.
int monotone_count(int n, int i, int j, int length_bound) {
    const int m = n + 1;
    int count = (i == j) ? 1 : 0;
    for (int step : {((j - i) % m + m) % m, ((i - j) % m + m) % m}) {
        for (int len = step == 0 ? m : step; len <= length_bound; len += m) ++count;
    }
    return count;
}

Presentation conifold() {
    PolyRing s(Field::rationals(), {"x", "y"});
    return contraction_quiver(1, s, {s.variable("x"), s.variable("y")});
}

}  // namespace

TEST_CASE("tube algebra shapes") {
    auto p1 = tube_algebra(1, tring(1));
    CHECK(p1.quiver().vertex_count() == 2);
    CHECK(p1.quiver().arrow_count() == 4);
    CHECK(p1.rules().size() == 4);

    auto p0 = tube_algebra(0, tring(0));
    CHECK(p0.quiver().vertex_count() == 1);
    CHECK(p0.format(p0.normal_form(p0.word("a0*b0"))) == "t0*e0");
    CHECK(p0.format(p0.normal_form(p0.word("b0*a0"))) == "t0*e0");
    CHECK(p0.check_confluence().confluent);

    CHECK_THROWS_AS(tube_algebra(2, tring(1)), StructuralError);
}

TEST_CASE("normal forms in the tube algebra") {
    for (int n = 1; n <= 4; ++n) {
        auto p = tube_algebra(n, tring(n));
        CHECK(p.format(p.normal_form(p.word("a0*b0"))) == "t0*e1");
        CHECK(p.format(p.normal_form(p.word("e1"))) == "e1");
    }
    auto p = tube_algebra(2, tring(2));
    Element w = p.element(p.word("a1*b1*a1"));
    Element left = p.normal_form(w, Strategy::leftmost);
    Element right = p.normal_form(w, Strategy::rightmost);
    CHECK(left == right);
    CHECK(p.format(left) == "t1*a1");
    CHECK_THROWS_AS(p.word("a0*a0"), StructuralError);
    CHECK(p.check_confluence().confluent);
    CHECK(p.check_confluence().overlaps_checked == 6);
}

TEST_CASE("confluence checker on small rule sets") {
    PolyRing k(Field::rationals(), {"t"});
    Quiver q({"0"});
    q.add_arrow("alpha", 0, 0, -1);
    Presentation sq(q, k);
    sq.add_rule("alpha*alpha", "0");
    CHECK(sq.check_confluence().confluent);

    Quiver q2({"0"});
    q2.add_arrow("a", 0, 0);
    q2.add_arrow("b", 0, 0);
    Presentation adv(q2, k);
    adv.add_rule("a*b", "e0");
    adv.add_rule("b*a", "2*e0");
    auto rep = adv.check_confluence();
    CHECK_FALSE(rep.confluent);
    REQUIRE_FALSE(rep.unresolved.empty());
    const auto& cp = rep.unresolved.front();
    CHECK(adv.format(cp.word).size() == 5);
    std::set<std::string> sides{adv.format(cp.via_a), adv.format(cp.via_b)};
    const bool a_side = sides == std::set<std::string>{"a", "2*a"};
    const bool b_side = sides == std::set<std::string>{"b", "2*b"};
    CHECK((a_side || b_side));
    CHECK(rep.unresolved.size() == 2);

    Presentation bad(q2, k);
    CHECK_THROWS_AS(bad.add_rule("a", "a*b"), StructuralError);
}

TEST_CASE("multiplication") {
    auto p = tube_algebra(2, tring(2));
    auto a0 = p.arrow_element("a0"), b0 = p.arrow_element("b0");
    CHECK(p.format(p.multiply(a0, b0)) == "t0*e1");
    CHECK(p.multiply(p.lazy(1), a0) == a0);
    CHECK(p.multiply(p.lazy(0), a0).is_zero());
    CHECK(p.multiply(p.unit(), a0) == a0);
    CHECK(p.multiply(a0, p.unit()) == a0);
}

TEST_CASE("center relation uv = vu = t0...tn") {
    for (int n = 0; n <= 5; ++n) {
        auto p = tube_algebra(n, tring(n));
        Element u = tube_u(p, n), v = tube_v(p, n);
        Poly prod = p.ring().one();
        for (int i = 0; i <= n; ++i) prod = prod * p.ring().variable(static_cast<std::size_t>(i));
        Element expect;
        expect.add_scaled(p.unit(), prod);
        CHECK(p.multiply(u, v) == expect);
        CHECK(p.multiply(v, u) == expect);
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
            Element ti;
            ti.add_scaled(p.unit(), p.ring().variable(i));
            CHECK(p.multiply(u, ti) == p.multiply(ti, u));
        }
    }
}

TEST_CASE("freeness: graded ranks match the monotone-path count") {
    for (int n = 0; n <= 5; ++n) {
        auto p = tube_algebra(n, tring(n));
        const int bound = 2 * (n + 1) + 2;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                auto basis = p.graded_basis(i, j, 0, bound);
                CHECK(static_cast<int>(basis.size()) == monotone_count(n, i, j, bound));
            }
        }
    }
    auto p = tube_algebra(2, tring(2));
    std::vector<std::string> e00;
    for (const auto& w : p.graded_basis(0, 0, 0, 6)) e00.push_back(p.format(w));
    CHECK(e00 == std::vector<std::string>{"e0", "a2*a1*a0", "b0*b1*b2", "a2*a1*a0*a2*a1*a0",
                                          "b0*b1*b2*b0*b1*b2"});
    std::vector<std::string> e01;
    for (const auto& w : p.graded_basis(0, 1, 0, 4)) e01.push_back(p.format(w));
    CHECK(e01 == std::vector<std::string>{"a0", "b1*b2", "a0*a2*a1*a0"});
    CHECK(p.graded_basis(0, 0, 1, 6).empty());
}

TEST_CASE("random reduction orders agree") {
    std::mt19937_64 rng(11);
    std::vector<Presentation> pres{tube_algebra(3, tring(3)), conifold(),
                                   drinfeld_localize(tube_algebra(1, tring(1)), 0)};
    for (const auto& p : pres) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::uniform_int_distribution<int> len(1, 9);
            Element w = p.element(p.random_word(rng, len(rng)));
            Element base = p.normal_form(w, Strategy::leftmost);
            CHECK(p.normal_form(w, Strategy::random, &rng) == base);
            CHECK(p.normal_form(w, Strategy::rightmost) == base);
        }
    }
}

TEST_CASE("associativity on random triples") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> len(0, 4);
    std::vector<Presentation> pres{tube_algebra(2, tring(2)), conifold()};
    for (const auto& p : pres) {
        int composable = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            Element x = p.normal_form(p.random_word(rng, len(rng)));
            Element y = p.normal_form(p.random_word(rng, len(rng)));
            Element z = p.normal_form(p.random_word(rng, len(rng)));
            Element l = p.multiply(p.multiply(x, y), z);
            CHECK(l == p.multiply(x, p.multiply(y, z)));
            composable += !l.is_zero();
        }
        CHECK(composable > 0);
    }
}

TEST_CASE("conifold differential") {
    auto g = conifold();
    CHECK(g.quiver().vertex_count() == 1);
    CHECK(g.format(g.differential(g.arrow_element("alpha"))) == "x*e1");
    CHECK(g.format(g.differential(g.arrow_element("beta"))) == "y*e1");
    CHECK(g.differential(g.lazy(0)).is_zero());
    Element dab = g.differential(g.element(g.word("alpha*beta")));
    CHECK(dab == g.parse("x*beta - y*alpha"));
    Element aba = g.element(g.word("alpha*beta*alpha"));
    CHECK(g.differential(g.differential(aba)).is_zero());
    CHECK(g.check_differential().empty());

    std::vector<std::string> deg2;
    for (const auto& w : g.graded_basis(0, 0, -2, 4)) deg2.push_back(g.format(w));
    CHECK(deg2 == std::vector<std::string>{"alpha*beta", "beta*alpha"});
}

TEST_CASE("Leibniz rule on random pairs") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(0, 5);
    auto loc = drinfeld_localize(tube_algebra(1, tring(1)), 0);
    for (const auto& p : {conifold(), loc}) {
        for (int trial = 0; trial < 300; ++trial) {
            Path v = p.random_word(rng, len(rng));
            Path w = p.random_word(rng, len(rng));
            Element ev = p.element(v), ew = p.element(w);
            Element lhs = p.differential(p.multiply(ev, ew));
            Element rhs = p.multiply(p.differential(ev), ew);
            Element second = p.multiply(ev, p.differential(ew));
            if (p.degree(v) % 2 == 0) rhs.add(second);
            else rhs.add(-second);
            CHECK(lhs == rhs);
            CHECK(p.differential(p.differential(ev)).is_zero());
        }
    }
}

TEST_CASE("contraction quivers") {
    PolyRing s(Field::rationals(), {"x", "y"});
    CHECK_THROWS(contraction_quiver(0, s, {s.variable("x")}));
    for (int n = 1; n <= 5; ++n) {
        auto r = tring(n);
        std::vector<Poly> f;
        for (int i = 0; i <= n; ++i) f.push_back(r.variable(static_cast<std::size_t>(i)));
        auto g = contraction_quiver(n, r, f);
        CHECK(g.check_confluence().confluent);
        CHECK(g.check_differential().empty());
        CHECK(g.quiver().arrow_count() == static_cast<std::size_t>(2 * (n - 1) + 2));
        for (int m = 0; m >= -3; --m) {
            for (const auto& w : g.graded_basis(0, n - 1, m, 6)) {
                CHECK(g.differential(g.differential(g.element(w))).is_zero());
            }
        }
        f[0] = r.zero();
        auto g0 = contraction_quiver(n, r, f);
        CHECK(g0.differential(g0.arrow_element("alpha")).is_zero());
        CHECK(g0.check_differential().empty());
    }
    auto aug = contraction_quiver(2, s, {Poly::parse(s, "x"), Poly::parse(s, "x^2+y^3"),
                                         Poly::parse(s, "y")},
                                  ArrowConvention::reversed);
    CHECK(aug.format(aug.normal_form(aug.word("a1*b1"))) == "(y^3 + x^2)*e1");
    CHECK(aug.format(aug.normal_form(aug.word("b1*a1"))) == "(y^3 + x^2)*e2");
    CHECK(aug.check_differential().empty());
}

TEST_CASE("drinfeld localisation") {
    auto loc = drinfeld_localize(tube_algebra(1, tring(1)), 0);
    CHECK(loc.quiver().arrow_count() == 5);
    CHECK(loc.format(loc.differential(loc.arrow_element("eps"))) == "e0");
    CHECK(loc.check_differential().empty());
    CHECK(loc.is_irreducible(loc.word("eps*eps")));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        Path w = loc.random_word(rng, 3);
        Path w2 = loc.random_word(rng, 3);
        auto left = loc.compose(loc.word("eps"), w);
        if (!left) continue;
        auto full = loc.compose(w2, *left);
        if (!full) continue;
        CHECK(loc.differential(loc.differential(loc.element(*full))).is_zero());
    }
    auto e11 = loc.graded_basis(1, 1, 0, 4);
    std::vector<std::string> names;
    for (const auto& w : e11) names.push_back(loc.format(w));
    CHECK(names == std::vector<std::string>{"e1", "a0*a1", "b1*b0", "a0*a1*a0*a1",
                                            "b1*b0*b1*b0"});
    CHECK_THROWS_AS(drinfeld_localize(conifold(), 0), StructuralError);
}

TEST_CASE("presentation serialisation round trip") {
    auto g = conifold();
    auto back = Presentation::from_json(g.to_json());
    CHECK(back.dump() == g.dump());
    auto t = tube_algebra(2, tring(2));
    CHECK(Presentation::from_json(t.to_json()).dump() == t.dump());
    CHECK(t.to_json()["rules"][0]["lhs"] == nlohmann::json::array({"a0", "b0"}));
}

TEST_CASE("base change of the tube algebra") {
    auto r = tring(1);
    PolyRing s(Field::rationals(), {"x", "y"});
    RingMap m(r, s, {s.variable("x"), s.variable("y")});
    auto t = tube_algebra(1, r).base_change(m);
    CHECK(t.format(t.normal_form(t.word("a0*b0"))) == "x*e1");
    CHECK(t.format(t.normal_form(t.word("b1*a1"))) == "y*e1");
}
