#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "tubencr/toric.hpp"

using namespace tubencr;

namespace {

// Brute force: every exponent vector of the Cox ring up to the bound.
std::set<WeightMonomial> oracle_weight_monomials(int n, const TorusWeight& w, int bound) {
    std::set<WeightMonomial> out;
    auto cox = cox_ring(Field::rationals(), n);
    for (const auto& e : cox.monomials_up_to(bound)) {
        WeightMonomial m{Exponent(e.begin(), e.begin() + n + 1), Exponent(e.begin() + n + 1, e.end())};
        if (weight(m, n) == w) out.insert(m);
    }
    return out;
}

WeightMonomial random_monomial(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> d(0, 3);
    WeightMonomial m{Exponent(static_cast<std::size_t>(n + 1)), Exponent(static_cast<std::size_t>(n + 1))};
    for (auto& x : m.c) x = d(rng);
    for (auto& x : m.d) x = d(rng);
    return m;
}

WeightMonomial u_mon(int n) { return sigma(n, n + 1); }
WeightMonomial v_mon(int n) { return tau(n, 0); }

}  // namespace

TEST_CASE("weights") {
    CHECK(weight(x_monomial(3, 0), 3) == TorusWeight{1, 0, 0});
    CHECK(weight(x_monomial(3, 3), 3) == TorusWeight{0, 0, -1});
    CHECK(weight(y_monomial(3, 1), 3) == TorusWeight{1, -1, 0});
    for (int n = 1; n <= 5; ++n) {
        for (int i = 0; i <= n; ++i) {
            CHECK(weight(x_monomial(n, i) * y_monomial(n, i), n) == character(n, 0));
        }
        CHECK(weight(u_mon(n), n) == character(n, 0));
        CHECK(weight(v_mon(n), n) == character(n, 0));
        for (int i = 1; i <= n; ++i) {
            CHECK(weight(sigma(n, i), n) == character(n, i));
            CHECK(weight(tau(n, i), n) == character(n, i));
        }
    }
    CHECK(weight(y_monomial(2, 2), 2) == character(2, 2));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 5;
        auto a = random_monomial(rng, n), b = random_monomial(rng, n);
        auto wa = weight(a, n), wb = weight(b, n), wab = weight(a * b, n);
        for (int k = 0; k < n; ++k) CHECK(wab[k] == wa[k] + wb[k]);
    }
    CHECK_THROWS(weight(x_monomial(2, 0), 3));
}

TEST_CASE("monomial enumeration matches brute force") {
    for (int n = 1; n <= 3; ++n) {
        const int bound = n == 3 ? 6 : 7;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                TorusWeight w = character(n, j);
                for (int k = 0; k < n; ++k) w[k] -= character(n, i)[k];
                auto fast = weight_monomials(n, w, bound);
                std::set<WeightMonomial> fs(fast.begin(), fast.end());
                CHECK(fs.size() == fast.size());
                CHECK(fs == oracle_weight_monomials(n, w, bound));
                auto red = reduced_weight_monomials(n, w, bound);
                for (const auto& m : red) CHECK(m.reduced());
                CHECK(static_cast<std::size_t>(std::count_if(fast.begin(), fast.end(),
                                                             [](auto& m) { return m.reduced(); })) ==
                      red.size());
            }
        }
    }
}

TEST_CASE("invariant ring is generated by t, u, v") {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& m : weight_monomials(n, character(n, 0), 8)) {
            auto [s, r] = split_t(m);
            const int z = r.c[0] - r.d[0];
            WeightMonomial expect = z >= 0 ? u_mon(n) : v_mon(n);
            WeightMonomial pw{Exponent(static_cast<std::size_t>(n + 1)), Exponent(static_cast<std::size_t>(n + 1))};
            for (int k = 0; k < std::abs(z); ++k) pw = pw * expect;
            CHECK(r == pw);
        }
        // uv = t0 ... tn
        auto [s, r] = split_t(u_mon(n) * v_mon(n));
        CHECK(r.degree() == 0);
        CHECK(s == Exponent(static_cast<std::size_t>(n + 1), 1));
    }
}

TEST_CASE("section bases") {
    auto s11 = section_basis(1, 1, 6);
    CHECK(s11.status == SectionStatus::complete);
    CHECK(std::set<WeightMonomial>(s11.monomials.begin(), s11.monomials.begin() + 2) ==
          std::set<WeightMonomial>{x_monomial(1, 0), y_monomial(1, 1)});
    CHECK(s11.monomials.size() == oracle_weight_monomials(1, character(1, 1), 6).size());
    CHECK(section_basis(3, 3, 6).monomials.front() == y_monomial(3, 3));
    for (int n = 1; n <= 3; ++n) {
        for (int i = 1; i <= n; ++i) {
            auto sb = section_basis(i, n, 7);
            CHECK(sb.certificates.size() == sb.monomials.size());
            std::set<WeightMonomial> all(sb.monomials.begin(), sb.monomials.end());
            CHECK(all == oracle_weight_monomials(n, character(n, i), 7));
            for (const auto& c : sb.certificates) CHECK(check_certificate(n, i, c));
            // Module relations v*sigma = t0..t_{i-1} tau and u*tau = t_i..t_n sigma.
            auto [s1, r1] = split_t(v_mon(n) * sigma(n, i));
            CHECK(r1 == tau(n, i));
            for (int k = 0; k <= n; ++k) CHECK(s1[k] == (k < i ? 1 : 0));
            auto [s2, r2] = split_t(u_mon(n) * tau(n, i));
            CHECK(r2 == sigma(n, i));
            for (int k = 0; k <= n; ++k) CHECK(s2[k] == (k >= i ? 1 : 0));
        }
    }
    auto s22 = section_basis(2, 2, 6);
    CHECK(s22.ideal.first == "u");
    CHECK(s22.ideal.second == "t2");
    CHECK(s22.relations[0] == "v*sigma2 = t0*t1*tau2");
    CHECK(section_basis(2, 5, 3).status == SectionStatus::inconclusive_at_bound);
    CHECK_THROWS(section_basis(0, 2, 4));
}

TEST_CASE("wedge components are the maximal minors") {
    for (int n = 2; n <= 5; ++n) {
        auto cox = cox_ring(Field::rationals(), n);
        // Matrix rows s_1..s_{n-1}; column c holds M_{c+1}.
        std::vector<std::vector<Poly>> mat(static_cast<std::size_t>(n - 1),
                                           std::vector<Poly>(static_cast<std::size_t>(n), cox.zero()));
        for (int r = 1; r < n; ++r) {
            mat[r - 1][r - 1] = to_poly(cox, sigma(n, r));
            mat[r - 1][r] = to_poly(cox, tau(n, r + 1));
        }
        auto comps = wedge_components(n);
        for (int drop = 0; drop < n; ++drop) {
            std::vector<int> cols;
            for (int c = 0; c < n; ++c) if (c != drop) cols.push_back(c);
            // Leibniz expansion over permutations.
            std::vector<int> perm(cols.size());
            for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
            Poly det = cox.zero();
            do {
                int inv = 0;
                for (std::size_t a = 0; a < perm.size(); ++a)
                    for (std::size_t b = a + 1; b < perm.size(); ++b) inv += perm[a] > perm[b];
                Poly term = cox.one();
                for (std::size_t r = 0; r < perm.size(); ++r) term *= mat[r][cols[perm[r]]];
                det += inv % 2 ? -term : term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            Poly expect = to_poly(cox, comps[drop]);
            CHECK((det == expect || det == -expect));
        }
    }
}

TEST_CASE("wedge nonvanishing") {
    for (int n = 2; n <= 6; ++n) {
        auto rep = wedge_nonvanishing(n);
        CHECK(rep.holds);
        CHECK(rep.patterns == (std::size_t{1} << (2 * (n + 1))));
        CHECK(rep.degenerate_patterns > 0);
    }
    // x0 = y2 = 0 for n = 2.
    const unsigned mask = 1u << 0 | 1u << (3 + 2);
    for (const auto& c : wedge_components(2)) CHECK(vanishes(c, 2, mask));
    auto w = instability_witness(2, mask);
    REQUIRE(w.has_value());
    CHECK(*w == std::make_pair(0, 2));
    CHECK_FALSE(instability_witness(2, 1u << 2 | 1u << 3).has_value());
}

TEST_CASE("End algebra matches the tube algebra") {
    auto r1 = end_algebra(1, 6);
    CHECK(r1.passed());
    // e0 A e0 <-> {1, u^r, v^s}
    CHECK(r1.ranks.at({0, 0}) == std::vector<int>{1, 0, 2, 0, 2, 0, 2});
    CHECK(r1.generator_images.at("a0") == "x0");
    for (int n = 1; n <= 4; ++n) {
        auto rep = end_algebra(n, default_toric_bound(n));
        CHECK(rep.bijective);
        CHECK(rep.multiplicative);
        CHECK_FALSE(rep.counterexample.has_value());
    }
    auto r = PolyRing::tube_coefficients(Field::rationals(), 2);
    auto tube = tube_algebra(2, r);
    CHECK(path_image(tube, tube.word("a0*b0"), 2) == x_monomial(2, 0) * y_monomial(2, 0));
}

TEST_CASE("cyclic relabelling intertwines the isomorphism") {
    for (int n = 1; n <= 4; ++n) {
        auto r = PolyRing::tube_coefficients(Field::rationals(), n);
        auto tube = tube_algebra(n, r);
        const int m = n + 1;
        auto rot = [&](const WeightMonomial& x) {
            WeightMonomial y = x;
            for (int k = 0; k < m; ++k) {
                y.c[(k + 1) % m] = x.c[k];
                y.d[(k + 1) % m] = x.d[k];
            }
            return y;
        };
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                for (const auto& p : tube.graded_basis(i, j, 0, 2 * m)) {
                    std::vector<std::string> names;
                    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
                        const auto& nm = tube.quiver().arrow(*it).name;
                        names.push_back(nm.substr(0, 1) + std::to_string((std::stoi(nm.substr(1)) + 1) % m));
                    }
                    Path q = p.is_lazy() ? Path::lazy((i + 1) % m) : tube.compose_names(names);
                    CHECK(path_image(tube, q, n) == rot(path_image(tube, p, n)));
                    CHECK(tube.is_irreducible(q));
                }
            }
        }
    }
}

TEST_CASE("base change") {
    {
        PolyRing s(Field::rationals(), {"t"});
        const int n = 3;
        std::vector<Poly> f(n + 1, s.variable(0));
        auto rep = base_change_end(n, f, default_toric_bound(n));
        CHECK(rep.ok);
        CHECK(std::find(rep.relations.begin(), rep.relations.end(), "a0*b0 = t*e1") !=
              rep.relations.end());
    }
    {
        PolyRing s(Field::rationals(), {"x", "y"});
        auto rep = base_change_end(1, {s.variable(0), s.variable(1)}, default_toric_bound(1));
        CHECK(rep.ok);
        CHECK(rep.relations.size() == 4);
    }
    {
        auto r = PolyRing::tube_coefficients(Field::prime(5), 2);
        std::vector<Poly> id{r.variable(0), r.variable(1), r.variable(2)};
        CHECK(base_change_end(2, id, 6).ok);
    }
    {
        PolyRing s(Field::rationals(), {"x"});
        auto rep = base_change_end(1, {s.variable(0), s.zero()}, 6);
        CHECK(rep.ok);
    }
}
