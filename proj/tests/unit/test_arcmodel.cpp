#include "doctest.h"

#include "tubencr/arcmodel.hpp"

using namespace tubencr;

namespace {

PolyRing tring(int n) { return PolyRing::tube_coefficients(Field::rationals(), n); }

std::vector<Poly> t_vars(const PolyRing& r) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < r.nvars(); ++i) out.push_back(r.variable(i));
    return out;
}

// Translate a word of a into b through an arrow-name map.
Path translate(const Presentation& a, const Presentation& b, const Path& w,
               const std::map<std::string, std::string>& names) {
    std::vector<std::string> display;
    for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it) {
        display.push_back(names.at(a.quiver().arrow(*it).name));
    }
    return b.compose_names(display);
}

}  // namespace

TEST_CASE("annulus combinatorics") {
    for (int n = 0; n <= 8; ++n) {
        auto s = annulus(n);
        CHECK(s.arcs().size() == static_cast<std::size_t>(n + 1));
        CHECK(s.faces().size() == static_cast<std::size_t>(n + 1));
        CHECK(s.euler_characteristic() == 0);
        CHECK(s.total_marks() == n + 1);
        for (const auto& f : s.faces()) CHECK(f.cycle.size() == 4);
    }
    auto s0 = annulus(0);
    auto g0 = generate_presentation(s0, tring(0)).presentation;
    CHECK(g0.quiver().vertex_count() == 1);
    CHECK(g0.quiver().arrow_count() == 2);
    for (const auto& r : g0.rules()) CHECK(g0.format(r.rhs) == "t0*eL0");
}

TEST_CASE("disc combinatorics") {
    CHECK_THROWS(disc(0));
    for (int n = 1; n <= 8; ++n) {
        auto s = disc(n);
        CHECK(s.euler_characteristic() == 1);
        CHECK(s.faces().size() == static_cast<std::size_t>(n + 1));
        CHECK(s.total_marks() == n + 1);
    }
    auto g = generate_presentation(disc(1), tring(1)).presentation;
    CHECK(g.quiver().vertex_count() == 1);
    CHECK(g.quiver().arrow_count() == 2);
    for (const auto& a : g.quiver().arrows()) CHECK(a.deg == -1);
}

TEST_CASE("annulus presentation equals the tube algebra") {
    std::mt19937_64 rng(17);
    for (int n = 0; n <= 5; ++n) {
        auto gen = generate_presentation(annulus(n), tring(n));
        const auto& g = gen.presentation;
        auto t = tube_algebra(n, tring(n));
        auto iso = find_isomorphism(g, t, strip_arc_prefix(g));
        REQUIRE(iso.has_value());
        if (n >= 1) CHECK(iso->at("L0+>L1+") == "a0");
        CHECK(g.check_confluence().confluent);
        CHECK(gen.provenance.size() == g.rules().size());
        for (int trial = 0; trial < 1000 / 6; ++trial) {
            Path w = g.random_word(rng, 1 + trial % 8);
            Element lhs = g.normal_form(w);
            Element mapped;
            for (const auto& [p, c] : lhs.terms) {
                Path q = p.is_lazy() ? Path::lazy(t.quiver().vertex_index(
                                           strip_arc_prefix(g).at(g.quiver().vertices()[p.src])))
                                     : translate(g, t, p, *iso);
                mapped.add(q, c);
            }
            CHECK(mapped == t.normal_form(translate(g, t, w, *iso)));
        }
    }
}

TEST_CASE("disc presentation equals the contraction quiver") {
    for (int n = 1; n <= 5; ++n) {
        auto gen = generate_presentation(disc(n), tring(n));
        const auto& g = gen.presentation;
        auto c = contraction_quiver(n, tring(n), t_vars(tring(n)));
        auto iso = find_isomorphism(g, c, strip_arc_prefix(g));
        REQUIRE(iso.has_value());
        CHECK(iso->at("L1->L1+") == "alpha");
        CHECK(iso->at("L" + std::to_string(n) + "+>L" + std::to_string(n) + "-") == "beta");
        CHECK(g.check_differential().empty());
    }
}

TEST_CASE("isomorphism search rejects genuine differences") {
    auto g = generate_presentation(annulus(2), tring(2)).presentation;
    auto r = tring(2);
    // Same quiver, one relation coefficient swapped.
    auto t = tube_algebra(2, r);
    Presentation wrong(t.quiver(), r);
    for (std::size_t k = 0; k < t.rules().size(); ++k) {
        Element rhs = t.rules()[k].rhs;
        if (k == 0) {
            Element swapped;
            for (const auto& [p, c] : rhs.terms) swapped.add(p, r.variable("t1"));
            rhs = swapped;
        }
        wrong.add_rule(t.rules()[k].lhs, rhs);
    }
    CHECK_FALSE(find_isomorphism(g, wrong, strip_arc_prefix(g)).has_value());
    auto c = contraction_quiver(2, r, t_vars(r));
    auto d = generate_presentation(disc(2), r).presentation;
    CHECK_FALSE(find_isomorphism(g, c, strip_arc_prefix(g)).has_value());
    auto swapped_marks = contraction_quiver(2, r, {r.variable(2), r.variable(1), r.variable(0)});
    CHECK_FALSE(find_isomorphism(d, swapped_marks, strip_arc_prefix(d)).has_value());
}

TEST_CASE("surface validation") {
    // Unmarked bigon.
    CHECK_THROWS_AS(generate_presentation(MarkedSurface({{"L1+", "L1-"}},
                                                        {Face{{"L1", "L1->L1+"}, std::nullopt}}),
                                          tring(1)),
                    StructuralError);
    // Hexagon.
    MarkedSurface hex({{"A+", "B+", "C+"}, {"C-", "A-", "B-"}},
                      {Face{{"A", "A+>B+", "B", "B+>C+", "C", "C->A-"}, 0}});
    CHECK_THROWS_AS(MarkedSurface({{"A+", "B+", "C+"}, {"C-", "B-", "A-"}},
                                  {Face{{"A", "A+>B+", "B", "B->A-"}, 0},
                                   Face{{"A", "A+>B+", "B", "B->A-"}, 1}}),
                    StructuralError);
    CHECK_THROWS_AS(MarkedSurface({{"A+", "A+"}}, {}), StructuralError);
    CHECK_THROWS_AS(MarkedSurface({{"A+"}}, {}), StructuralError);
    // A stop between two arc-ends removes that chord.
    MarkedSurface stopped({{"L0+", "s", "L1+"}, {"L1-", "L0-"}},
                          {Face{{"L1", "L1+>L0+", "L0", "L0->L1-"}, std::nullopt}});
    CHECK_FALSE(stopped.is_chord("L0+>L1+"));
    CHECK(stopped.is_chord("L1+>L0+"));
    MarkedSurface bad_face({{"L0+", "s", "L1+"}, {"L1-", "L0-"}},
                           {Face{{"L0", "L0+>L1+", "L1", "L1->L0-"}, std::nullopt}});
    CHECK_THROWS_AS(generate_presentation(bad_face, tring(1)), StructuralError);
    CHECK_THROWS(generate_presentation(hex, tring(1)));
}

TEST_CASE("unmarked quadrilateral gives unit coefficients") {
    MarkedSurface s({{"L0+", "L1+"}, {"L1-", "L0-"}},
                    {Face{{"L0", "L0+>L1+", "L1", "L1->L0-"}, std::nullopt},
                     Face{{"L1", "L1+>L0+", "L0", "L0->L1-"}, 1}});
    auto g = generate_presentation(s, tring(1)).presentation;
    CHECK(g.format(g.normal_form(g.word("L0+>L1+*L1->L0-"))) == "eL1");
    CHECK(g.format(g.normal_form(g.word("L1+>L0+*L0->L1-"))) == "t1*eL0");
}

TEST_CASE("surface JSON round trip") {
    auto s = disc(3);
    auto back = MarkedSurface::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    CHECK(s.to_json()["faces"][0]["mark"] == 0);
}
