#include "doctest.h"

#include <random>

#include "tubencr/exactalg.hpp"
#include "tubencr/linalg.hpp"

using namespace tubencr;

namespace {

// Dense Gaussian elimination over Q; independent of Echelon.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// dim {v : A v = 0, deg v_j <= bound} by brute force over the monomial basis.
std::size_t oracle_kernel_dim(const PolyRing& ring, const PolyMatrix& a, int bound) {
    auto monos = ring.monomials_up_to(bound);
    auto out_monos = ring.monomials_up_to(bound + 8);
    const std::size_t cols = a[0].size();
    std::vector<std::vector<mpq_class>> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& om : out_monos) {
            std::vector<mpq_class> row;
            for (std::size_t j = 0; j < cols; ++j) {
                for (const auto& m : monos) {
                    Poly prod = a[i][j] * ring.monomial(m, ring.scalar(1));
                    row.push_back(prod.coefficient(om).value());
                }
            }
            rows.push_back(row);
        }
    }
    return cols * monos.size() - dense_rank(rows);
}

bool vector_is_zero(const PolyMatrix& a, const PolyVector& v) {
    for (const auto& row : a) {
        Poly s(v[0].ring());
        for (std::size_t j = 0; j < v.size(); ++j) s += row[j] * v[j];
        if (!s.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("field parsing and scalar arithmetic") {
    CHECK(Field::parse("q") == Field::rationals());
    CHECK(Field::parse("F5").characteristic() == 5);
    CHECK(Field::parse("GF(7)").characteristic() == 7);
    CHECK_THROWS(Field::parse("f6"));
    CHECK_THROWS(Field::parse("r"));

    const Field f5 = Field::prime(5);
    Scalar a(f5, 3), b(f5, 4);
    CHECK((a + b) == Scalar(f5, 2));
    CHECK((a * b) == Scalar(f5, 2));
    CHECK((a / b) * b == a);
    CHECK(Scalar(f5, -1).to_string() == "-1");
    CHECK(Scalar::parse(f5, "1/2") == Scalar(f5, 3));
    CHECK_THROWS_AS(Scalar::parse(f5, "1/5"), StructuralError);
    CHECK(Scalar::parse(Field::rationals(), "3/6").to_string() == "1/2");
}

TEST_CASE("polynomial arithmetic") {
    const PolyRing r = PolyRing::tube_coefficients(Field::rationals(), 1);
    Poly t0 = r.variable("t0"), t1 = r.variable("t1");
    CHECK((t0 * t1).to_string() == "t0*t1");
    Poly p = Poly::parse(r, "3*t0^2*t1 - 1");
    CHECK(p.to_string() == "3*t0^2*t1 - 1");
    CHECK((p + (-p)).is_zero());
    CHECK((p + (-p)).terms().empty());
    CHECK(Poly::parse(r, "(t0+t1)^2").to_string() == "t0^2 + 2*t0*t1 + t1^2");
    CHECK(Poly::parse(r, "3/2*t1").to_string() == "3/2*t1");
    CHECK(Poly::from_json(r, p.to_json()) == p);
    CHECK(p.to_json().dump() == R"({"terms":[{"coef":"3","exp":[2,1]},{"coef":"-1","exp":[0,0]}]})");
    CHECK_THROWS(Poly::parse(r, "t2"));
    CHECK_THROWS(Poly::parse(r, "t0 +"));

    const PolyRing other(Field::rationals(), {"x", "y"});
    CHECK_THROWS_AS(t0 + other.variable("x"), StructuralError);
}

TEST_CASE("characteristic dispatch on the pagoda pair") {
    for (std::uint32_t p : {0u, 2u, 3u, 5u}) {
        const Field f = p == 0 ? Field::rationals() : Field::prime(p);
        const PolyRing s(f, {"x", "y"});
        Poly sum = Poly::parse(s, "(y + x^2) + (y - x^2)");
        Poly diff = Poly::parse(s, "(y + x^2) - (y - x^2)");
        CHECK(sum.is_zero() == (p == 2));
        CHECK(diff.is_zero() == (p == 2));
        if (p == 0) CHECK(sum.to_string() == "2*y");
    }
}

TEST_CASE("substitution") {
    const PolyRing r = PolyRing::tube_coefficients(Field::rationals(), 1);
    const PolyRing s(Field::rationals(), {"x", "y"});
    RingMap m(r, s, {s.variable("x"), s.variable("y")});
    CHECK(substitute(Poly::parse(r, "t0*t1"), m).to_string() == "x*y");

    const PolyRing r2 = PolyRing::tube_coefficients(Field::rationals(), 2);
    const PolyRing st(Field::rationals(), {"t"});
    RingMap all_t(r2, st, {st.variable(0), st.variable(0), st.variable(0)});
    CHECK(substitute(Poly::parse(r2, "t0*t1*t2"), all_t).to_string() == "t^3");

    Poly q = Poly::parse(r2, "t0^2 - 3*t1*t2 + 7");
    CHECK(substitute(q, RingMap::identity(r2)) == q);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
    auto random_poly = [&](const PolyRing& ring) {
        Poly out = ring.zero();
        for (int k = 0; k < 4; ++k) {
            Exponent e(ring.nvars());
            for (auto& x : e) x = ex(rng);
            out += ring.monomial(e, ring.scalar(coef(rng)));
        }
        return out;
    };
    RingMap f(r, s, {Poly::parse(s, "x^2+y"), Poly::parse(s, "x - y^3")});
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = random_poly(r), b = random_poly(r);
        CHECK(f.apply(a * b) == f.apply(a) * f.apply(b));
        CHECK(f.apply(a + b) == f.apply(a) + f.apply(b));
    }
}

TEST_CASE("truncated kernel of (x, y)") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    PolyMatrix a{{s.variable("x"), s.variable("y")}};
    auto k = truncated_kernel(s, a, 3);
    REQUIRE(k.generators.size() == 1);
    CHECK(k.generators[0][0].to_string() == "y");
    CHECK(k.generators[0][1].to_string() == "-x");
    CHECK(k.basis.size() == oracle_kernel_dim(s, a, 3));
    for (const auto& v : k.basis) CHECK(vector_is_zero(a, v));

    auto k5 = truncated_kernel(s, a, 5);
    CHECK(k5.basis.size() == oracle_kernel_dim(s, a, 5));
    CHECK(k5.generators.size() == 1);
}

TEST_CASE("truncated kernel of (t1, t0) over F5 and Q") {
    for (auto f : {Field::rationals(), Field::prime(5)}) {
        const PolyRing r = PolyRing::tube_coefficients(f, 1);
        PolyMatrix a{{r.variable("t1"), r.variable("t0")}};
        auto k = truncated_kernel(r, a, 4);
        REQUIRE(k.generators.size() == 1);
        CHECK(k.generators[0][0].to_string() == "t0");
        CHECK(k.generators[0][1].to_string() == "-t1");
        if (f.is_rationals()) CHECK(k.basis.size() == oracle_kernel_dim(r, a, 4));
    }
}

TEST_CASE("truncated kernel on a two-row matrix against the dense oracle") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    PolyMatrix a{{Poly::parse(s, "x"), Poly::parse(s, "y"), Poly::parse(s, "0")},
                 {Poly::parse(s, "0"), Poly::parse(s, "x^2"), Poly::parse(s, "x*y")}};
    for (int bound : {2, 3, 4}) {
        auto k = truncated_kernel(s, a, bound);
        CHECK(k.basis.size() == oracle_kernel_dim(s, a, bound));
        for (const auto& v : k.basis) CHECK(vector_is_zero(a, v));
        for (const auto& g : k.generators) CHECK(vector_is_zero(a, g));
    }
}

TEST_CASE("truncated membership") {
    const PolyRing s(Field::rationals(), {"x", "y"});
    PolyMatrix a{{s.variable("x")}};
    auto m = truncated_membership(s, a, {Poly::parse(s, "x^2")}, 2);
    REQUIRE(m.is_member());
    CHECK(m.witness[0].to_string() == "x");

    auto no = truncated_membership(s, a, {Poly::parse(s, "y")}, 4);
    CHECK(no.status == MembershipStatus::inconclusive_at_bound);
    CHECK(no.bound == 4);

    auto low = truncated_membership(s, a, {Poly::parse(s, "x^5")}, 2);
    CHECK(low.status == MembershipStatus::inconclusive_at_bound);

    PolyMatrix ideal{{Poly::parse(s, "y + x^2"), Poly::parse(s, "y - x^2")}};
    CHECK(truncated_membership(s, ideal, {Poly::parse(s, "x^2")}, 2).is_member());
    const PolyRing s2(Field::prime(2), {"x", "y"});
    PolyMatrix ideal2{{Poly::parse(s2, "y + x^2"), Poly::parse(s2, "y - x^2")}};
    CHECK_FALSE(truncated_membership(s2, ideal2, {Poly::parse(s2, "x^2")}, 4).is_member());
}

TEST_CASE("echelon nullspace") {
    const Field q = Field::rationals();
    std::vector<SparseVec> cols{{{0, Scalar(q, 1)}}, {{0, Scalar(q, 2)}}, {{1, Scalar(q, 1)}}};
    auto ns = nullspace(q, cols);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0].at(0) == Scalar(q, -2));
    CHECK(ns[0].at(1) == Scalar(q, 1));
}
