#include <algorithm>
#include <sstream>

#include "tubencr/arcmodel.hpp"
#include "tubencr/cli.hpp"
#include "tubencr/cohom.hpp"
#include "tubencr/toric.hpp"
#include "tubencr/twcat.hpp"

namespace tubencr {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "fail";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 1;
}

Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
}

nlohmann::json Criterion::to_json() const {
    return {{"id", id}, {"title", title}, {"verdict", verdict_name(verdict)}, {"detail", detail},
            {"data", data}};
}

namespace {

Verdict from_bool(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

// One a-path and one b-path per winding, plus the lazy path.
int monotone_count(int n, int i, int j, int length_bound) {
    const int m = n + 1;
    int count = (i == j) ? 1 : 0;
    for (int step : {((j - i) % m + m) % m, ((i - j) % m + m) % m}) {
        for (int len = step == 0 ? m : step; len <= length_bound; len += m) ++count;
    }
    return count;
}

PolyRing tring(int n) { return PolyRing::tube_coefficients(Field::rationals(), n); }

Criterion freeness() {
    Criterion c{1, "tube algebra freeness", Verdict::pass, "", nlohmann::json::array()};
    std::size_t checked = 0;
    for (int n = 0; n <= 5; ++n) {
        auto p = tube_algebra(n, tring(n));
        const int bound = 2 * (n + 1) + 2;
        bool ok = p.check_confluence().confluent;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                ++checked;
                if (static_cast<int>(p.graded_basis(i, j, 0, bound).size()) !=
                    monotone_count(n, i, j, bound))
                    ok = false;
            }
        }
        c.data.push_back({{"n", n}, {"length_bound", bound}, {"ok", ok}});
        if (!ok) c.verdict = Verdict::fail;
    }
    c.detail = std::to_string(checked) + " hom spaces, n = 0..5";
    return c;
}

Criterion round_trip() {
    Criterion c{2, "arc model round trip", Verdict::pass, "", nlohmann::json::array()};
    for (int n = 0; n <= 5; ++n) {
        auto g = generate_presentation(annulus(n), tring(n)).presentation;
        const bool ok = find_isomorphism(g, tube_algebra(n, tring(n)), strip_arc_prefix(g)).has_value();
        c.data.push_back({{"surface", "annulus"}, {"n", n}, {"isomorphic", ok}});
        if (!ok) c.verdict = Verdict::fail;
    }
    for (int n = 1; n <= 5; ++n) {
        const PolyRing r = tring(n);
        std::vector<Poly> t;
        for (std::size_t i = 0; i < r.nvars(); ++i) t.push_back(r.variable(i));
        auto g = generate_presentation(disc(n), r).presentation;
        const bool ok =
            find_isomorphism(g, contraction_quiver(n, r, t), strip_arc_prefix(g)).has_value();
        c.data.push_back({{"surface", "disc"}, {"n", n}, {"isomorphic", ok}});
        if (!ok) c.verdict = Verdict::fail;
    }
    c.detail = "annulus n = 0..5, disc n = 1..5";
    return c;
}

Criterion center() {
    Criterion c{3, "center relation uv = vu = t0...tn", Verdict::pass, "", nlohmann::json::array()};
    for (int n = 0; n <= 5; ++n) {
        auto p = tube_algebra(n, tring(n));
        Poly prod = p.ring().one();
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) prod = prod * p.ring().variable(i);
        Element expect;
        expect.add_scaled(p.unit(), prod);
        const Element u = tube_u(p, n), v = tube_v(p, n);
        const bool ok = p.multiply(u, v) == expect && p.multiply(v, u) == expect;
        c.data.push_back({{"n", n}, {"ok", ok}});
        if (!ok) c.verdict = Verdict::fail;
    }
    c.detail = "n = 0..5";
    return c;
}

Criterion halftwist() {
    Criterion c{4, "half-twist equivalence over F2", Verdict::pass, "", nlohmann::json::array()};
    for (int n = 2; n <= 5; ++n) {
        for (const auto& rep : verify_halftwist(n)) {
            c.data.push_back({{"n", n}, {"report", rep.to_json()}});
            if (!rep.passed()) c.verdict = Verdict::fail;
        }
    }
    // Negative controls must fail.
    bool controls = true;
    for (auto w : {Wrapping::left, Wrapping::right}) {
        auto t = halftwist_tables(3, w);
        t.set_mu({"alpha'", "p", "b0"}, {"0"});
        controls = controls && !ainf_check(t, 4).ok;
        auto d = halftwist_data(3, w);
        d.q2.entries.erase({1, 0});
        controls = controls && !verify_halftwist(d).passed();
        auto e = halftwist_data(3, w);
        e.q1.entries.clear();
        controls = controls && !verify_halftwist(e).passed();
    }
    c.data.push_back({{"negative_controls_fail", controls}});
    if (!controls) c.verdict = Verdict::fail;
    c.detail = "n = 2..5, both wrappings, 6 negative controls";
    return c;
}

Criterion end_iso() {
    Criterion c{5, "toric End algebra matches the tube algebra", Verdict::pass, "",
                nlohmann::json::array()};
    for (int n = 1; n <= 4; ++n) {
        auto rep = end_algebra(n, default_toric_bound(n));
        c.data.push_back({{"n", n},
                          {"bound", rep.bound},
                          {"bijective", rep.bijective},
                          {"multiplicative", rep.multiplicative},
                          {"pairs_checked", rep.pairs_checked}});
        if (!rep.passed()) c.verdict = Verdict::fail;
    }
    c.detail = "n = 1..4 at length bound 2(n+1)+4";
    return c;
}

Criterion wedge() {
    Criterion c{6, "wedge nonvanishing", Verdict::pass, "", nlohmann::json::array()};
    std::size_t patterns = 0;
    for (int n = 2; n <= 6; ++n) {
        auto rep = wedge_nonvanishing(n);
        patterns += rep.patterns;
        c.data.push_back(rep.to_json());
        if (!rep.holds) c.verdict = Verdict::fail;
    }
    c.detail = std::to_string(patterns) + " patterns, n = 2..6";
    return c;
}

Criterion base_change() {
    Criterion c{7, "base change commutes with substitution", Verdict::pass, "",
                nlohmann::json::array()};
    for (int n = 1; n <= 3; ++n) {
        PolyRing s(Field::rationals(), {"t"});
        auto rep = base_change_end(n, std::vector<Poly>(static_cast<std::size_t>(n + 1), s.variable(0)),
                                   default_toric_bound(n));
        c.data.push_back({{"f", "(t,...,t)"}, {"n", n}, {"ok", rep.ok}, {"pairs", rep.pairs_checked}});
        if (!rep.ok) c.verdict = Verdict::fail;
    }
    PolyRing s(Field::rationals(), {"x", "y"});
    auto rep = base_change_end(1, {s.variable(0), s.variable(1)}, default_toric_bound(1));
    c.data.push_back({{"f", "(x,y)"}, {"n", 1}, {"ok", rep.ok}, {"pairs", rep.pairs_checked}});
    if (!rep.ok) c.verdict = Verdict::fail;
    c.detail = "f = (t,...,t) for n = 1..3, f = (x,y)";
    return c;
}

Criterion sphere() {
    Criterion c{8, "sphere complex", Verdict::pass, "", nlohmann::json::array()};
    const std::vector<std::size_t> expected{0, 0, 1, 0, 0, 1};
    for (const auto& field : {Field::rationals(), Field::prime(5)}) {
        auto rep = sphere_report(field);
        const bool stable = std::all_of(rep.degrees.begin(), rep.degrees.end(),
                                        [](const auto& d) { return d.status == CohomStatus::stable; });
        c.data.push_back({{"field", field.name()}, {"report", rep.to_json()}});
        if (!rep.d_squared_zero || rep.ranks() != expected) c.verdict = Verdict::fail;
        else if (!stable) c.verdict = worst(c.verdict, Verdict::inconclusive);
    }
    c.detail = "ranks (0,0,1,0,0,1) in degrees -2..3 over Q and F5";
    return c;
}

Criterion conifold() {
    Criterion c{9, "conifold derived contraction algebra", Verdict::pass, "", nlohmann::json::array()};
    auto g = conifold_presentation(Field::rationals());
    const std::vector<std::size_t> expected{1, 0, 1, 0, 1};
    const std::vector<std::string> gens{"e1", "", "alpha*beta+beta*alpha", "",
                                        "alpha*beta*alpha*beta+beta*alpha*beta*alpha"};
    for (int m = 0; m <= 4; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        auto r = truncated_cohomology(g, 0, 0, m, Bounds{8, 8});
        auto r10 = truncated_cohomology(g, 0, 0, m, Bounds{10, 10});
        c.data.push_back({{"at_8_8", r.to_json()}, {"at_10_10", r10.to_json()}});
        const bool gen_ok =
            gens[mi].empty() ? r.generators.empty()
                             : (r.generators.size() == 1 && r.generators[0] == gens[mi]);
        if (r.rank != expected[mi] || !gen_ok) c.verdict = Verdict::fail;
        else if (r.status != CohomStatus::stable || r10.status != CohomStatus::stable)
            c.verdict = worst(c.verdict, Verdict::inconclusive);
    }
    c.detail = "H^0..H^-4 ranks (1,0,1,0,1) at (8,8), stable at (10,10)";
    return c;
}

Criterion pagoda() {
    Criterion c{10, "pagoda H^0", Verdict::pass, "", nlohmann::json::array()};
    for (int n = 2; n <= 4; ++n) {
        auto r = pagoda_h0(Field::rationals(), n, 8);
        auto ch = char2_pagoda_check(n);
        c.data.push_back({{"n", n}, {"h0", r.to_json()}, {"char2", ch.to_json()}});
        if (r.rank != static_cast<std::size_t>(n) || !ch.nontrivial()) c.verdict = Verdict::fail;
        else if (r.status != CohomStatus::stable) c.verdict = worst(c.verdict, Verdict::inconclusive);
    }
    c.detail = "dim H^0 = n over Q and x^n nonzero over F2, n = 2..4";
    return c;
}

Criterion august() {
    Criterion c{11, "August relations", Verdict::pass, "", nlohmann::json::object()};
    auto rep = august_relations(Field::rationals(), 10);
    c.data = rep.to_json();
    c.verdict = from_bool(rep.all_member());
    c.detail = std::to_string(rep.checks.size()) + " memberships at bound 10";
    return c;
}

Criterion localization() {
    Criterion c{12, "localisation consistency", Verdict::pass, "", nlohmann::json::object()};
    PolyRing s(Field::rationals(), {"x", "y"});
    auto rep = localization_consistency({s.variable(0), s.variable(1)}, 8, 4);
    c.data = rep.to_json();
    for (const auto& row : rep.rows) {
        if (row.localized.status != CohomStatus::stable || row.gamma.status != CohomStatus::stable)
            c.verdict = Verdict::fail;  // inconclusive at the shipped bound counts as failure
        else if (row.localized.rank != row.gamma.rank) c.verdict = Verdict::fail;
    }
    c.detail = "H^0..H^-4 at weight bound 8";
    return c;
}

}  // namespace

Criterion run_criterion(int id) {
    switch (id) {
        case 1: return freeness();
        case 2: return round_trip();
        case 3: return center();
        case 4: return halftwist();
        case 5: return end_iso();
        case 6: return wedge();
        case 7: return base_change();
        case 8: return sphere();
        case 9: return conifold();
        case 10: return pagoda();
        case 11: return august();
        case 12: return localization();
        default: throw std::out_of_range("no criterion " + std::to_string(id));
    }
}

std::vector<Criterion> acceptance_criteria() {
    std::vector<Criterion> out;
    for (int id = 1; id <= criterion_count; ++id) {
        try {
            out.push_back(run_criterion(id));
        } catch (const std::exception& e) {
            out.push_back(Criterion{id, "criterion " + std::to_string(id), Verdict::fail,
                                    std::string("exception: ") + e.what(), nullptr});
        }
    }
    return out;
}

}  // namespace tubencr
