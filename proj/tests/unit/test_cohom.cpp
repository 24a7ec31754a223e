#include "doctest.h"

#include <random>

#include "tubencr/cohom.hpp"

using namespace tubencr;

namespace {

// Dense rank over F_p.
std::size_t dense_rank(std::vector<std::vector<long>> rows, long p) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        long inv = 1;
        for (long k = 1; k < p; ++k)
            if ((rows[rank][c] % p + p) % p * k % p == 1) inv = k;
        for (auto& x : rows[rank]) x = (x % p + p) % p * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] % p == 0) continue;
            const long f = (rows[r][c] % p + p) % p;
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

SparseVec to_sparse(const Field& f, const std::vector<long>& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.emplace(i, Scalar(f, v[i]));
    return out;
}

Poly P(const PolyRing& r, const char* s) { return Poly::parse(r, s); }

}  // namespace

TEST_CASE("slice cohomology against dense ranks") {
    const long p = 7;
    const Field f = Field::prime(7);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(0, 6), sparse(0, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t box = 2 + trial % 4, outside = trial % 3, next = 1 + trial % 4;
        const std::size_t nin = 1 + trial % 6;
        std::vector<std::vector<long>> in(nin, std::vector<long>(box + outside));
        for (auto& row : in)
            for (auto& x : row) x = sparse(rng) == 0 ? coef(rng) : 0;
        // Columns of the outgoing map are drawn from the annihilator of the
        // box parts of the incoming vectors, found by brute force, so d^2 = 0.
        std::vector<std::vector<long>> annihilator;
        std::vector<long> v(box, 0);
        long total = 1;
        for (std::size_t i = 0; i < box; ++i) total *= p;
        for (long code = 0; code < total; ++code) {
            long c = code;
            for (auto& x : v) { x = c % p; c /= p; }
            bool ok = true;
            for (const auto& row : in) {
                long dot = 0;
                for (std::size_t i = 0; i < box; ++i) dot += row[i] * v[i];
                if (dot % p != 0) { ok = false; break; }
            }
            if (ok) annihilator.push_back(v);
        }
        std::uniform_int_distribution<std::size_t> pick(0, annihilator.size() - 1);
        std::vector<std::vector<long>> out(box, std::vector<long>(next));
        for (std::size_t k = 0; k < next; ++k) {
            const auto& col = annihilator[pick(rng)];
            for (std::size_t j = 0; j < box; ++j) out[j][k] = col[j];
        }

        LinearSlice s;
        s.box_dim = box;
        for (const auto& row : in) s.incoming.push_back(to_sparse(f, row));
        for (const auto& row : out) s.outgoing.push_back(to_sparse(f, row));
        const auto got = slice_cohomology(f, s);

        const std::size_t ker = box - dense_rank(out, p);
        std::vector<std::vector<long>> proj;
        for (const auto& row : in) proj.emplace_back(row.begin() + static_cast<long>(box), row.end());
        const std::size_t img = dense_rank(in, p) - (outside ? dense_rank(proj, p) : 0);
        CHECK(got.kernel_dim == ker);
        CHECK(got.image_dim == img);
        CHECK(got.representatives.size() + got.image_dim >= got.kernel_dim);
    }
}

TEST_CASE("sphere") {
    for (const auto& field : {Field::rationals(), Field::prime(5)}) {
        auto rep = sphere_report(field);
        CHECK(rep.d_squared_zero);
        CHECK(rep.ranks() == std::vector<std::size_t>{0, 0, 1, 0, 0, 1});
        for (const auto& d : rep.degrees) CHECK(d.status == CohomStatus::stable);
        // Torsion cohomology forces the alternating count of free
        // generators to vanish.
        auto c = sphere_complex(field);
        int chi = 0;
        for (int deg : c.degrees()) chi += (deg % 2 == 0 ? 1 : -1) * static_cast<int>(c.generators(deg).size());
        CHECK(chi == 0);
    }
    CHECK_FALSE(sphere_complex_printed_dm(Field::rationals()).d_squared_failures().empty());
}

TEST_CASE("conifold") {
    auto g = conifold_presentation(Field::rationals());
    const std::vector<std::size_t> expected{1, 0, 1, 0, 1};
    for (int m = 0; m <= 4; ++m) {
        auto r = truncated_cohomology(g, 0, 0, m, Bounds{8, 8});
        CHECK(r.rank == expected[static_cast<std::size_t>(m)]);
        CHECK(r.status == CohomStatus::stable);
        CHECK(truncated_cohomology(g, 0, 0, m, Bounds{10, 10}).status == CohomStatus::stable);
    }
    auto r2 = truncated_cohomology(g, 0, 0, 2, Bounds{8, 8});
    REQUIRE(r2.generators.size() == 1);
    CHECK(r2.generators[0] == "alpha*beta+beta*alpha");
    CHECK(h0_presentation(g, Bounds{4, 4}).closure_failures.empty());
}

TEST_CASE("stabilised ranks do not grow with the bound") {
    auto g = conifold_presentation(Field::rationals());
    for (int m = 0; m <= 4; ++m) {
        std::size_t prev = truncated_cohomology(g, 0, 0, m, Bounds{8, 8}).rank;
        for (int b : {9, 10}) {
            const std::size_t r = truncated_cohomology(g, 0, 0, m, Bounds{b, b}).rank;
            CHECK(r <= prev);
            prev = r;
        }
    }
    for (int n = 2; n <= 3; ++n) {
        std::size_t prev = pagoda_h0(Field::rationals(), n, 8).rank;
        for (int b : {9, 10}) {
            const std::size_t r = pagoda_h0(Field::rationals(), n, b).rank;
            CHECK(r <= prev);
            prev = r;
        }
    }
}

TEST_CASE("graded truncation agrees with box truncation on Gamma") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    const std::vector<Poly> f{P(s, "x"), P(s, "y")};
    auto g = conifold_presentation(Field::rationals());
    const auto gr = gamma_grading(f);
    CHECK(grading_violations(g, gr).empty());
    for (int m = 0; m <= 4; ++m) {
        CHECK(graded_cohomology(g, 0, 0, m, gr, 10).rank ==
              truncated_cohomology(g, 0, 0, m, Bounds{8, 8}).rank);
    }
}

TEST_CASE("grading checks") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    CHECK_THROWS(localized_grading({P(s, "x+y^2"), P(s, "y")}));
    CHECK_THROWS(gamma_grading({P(s, "x")}));
    auto g = conifold_presentation(Field::rationals());
    Grading bad = gamma_grading({P(s, "x"), P(s, "y")});
    bad.arrow_weights["alpha"] = 4;
    CHECK_FALSE(grading_violations(g, bad).empty());
    CHECK_THROWS(graded_cohomology(g, 0, 0, 1, bad, 6));
}

TEST_CASE("localisation") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    const std::vector<Poly> f{P(s, "x"), P(s, "y")};
    auto rep = localization_consistency(f, 8, 4);
    CHECK(rep.consistent());
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.rows[2].localized.generators ==
          std::vector<std::string>{"a0*eps*b0*b1*eps*a1+b1*eps*a1*a0*eps*b0"});
    // Too small to hold alpha*beta*alpha*beta (weight 8).
    auto small = localization_consistency(f, 6, 4);
    CHECK_FALSE(small.consistent());
    CHECK(small.rows[4].localized.status == CohomStatus::inconclusive_at_bound);
}

TEST_CASE("pagoda") {
    for (int n = 1; n <= 4; ++n) {
        auto r = pagoda_h0(Field::rationals(), n, 8);
        CHECK(r.rank == static_cast<std::size_t>(n));
        CHECK(r.status == CohomStatus::stable);
    }
    for (int n = 2; n <= 3; ++n) {
        auto c = char2_pagoda_check(n);
        CHECK(c.nontrivial());
        CHECK(c.rational_member);
    }
}

TEST_CASE("august relations") {
    auto rep = august_relations(Field::rationals());
    CHECK(rep.checks.size() == 9);
    CHECK(rep.all_member());
    auto g = august_presentation(Field::rationals());
    // Negative control: e1 itself is not in the ideal.
    CHECK_FALSE(h0_membership(g, g.lazy(0), Bounds{6, 6}).is_member());
}
