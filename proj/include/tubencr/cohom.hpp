#pragma once

// Truncated cohomology of free complexes over polynomial rings and of DG
// quiver algebras, H^0 presentations with ideal membership, and the
// contraction-algebra examples built on them.
//
// Everything is computed over the base field k: a chain group in a fixed
// degree is cut down to a finite "box" (poly degree, and word length for
// quiver algebras), and the reported rank is
//     dim ker(d|box) - dim(d(previous box) ∩ box).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubencr/linalg.hpp"
#include "tubencr/quivalg.hpp"

namespace tubencr {

// ---------------------------------------------------------------------------
// Finite slice engine

/// Middle coordinates 0..box_dim-1 form the box; larger indices are outside.
struct LinearSlice {
    std::size_t box_dim = 0;
    /// Images of the previous-degree box basis, over middle coordinates.
    std::vector<SparseVec> incoming;
    /// outgoing[j] = d(middle coordinate j) for j < box_dim.
    std::vector<SparseVec> outgoing;
};

struct SliceCohomology {
    std::size_t kernel_dim = 0;
    std::size_t image_dim = 0;
    std::size_t blocks = 0;
    /// Cycles in the box spanning a complement of the truncated image.
    std::vector<SparseVec> representatives;
    std::size_t rank() const { return kernel_dim - image_dim; }
};

/// Splits into connected blocks of the coordinate graph and works blockwise.
SliceCohomology slice_cohomology(const Field& field, const LinearSlice& slice);

enum class CohomStatus { stable, inconclusive_at_bound };

struct Bounds {
    int len = 0;      // ignored for free complexes
    int polydeg = 0;
    int weight = 0;   // set for weight-graded truncations
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct CohomologyReport {
    int degree = 0;
    std::size_t rank = 0;
    std::vector<std::string> generators;
    Bounds bounds;
    CohomStatus status = CohomStatus::inconclusive_at_bound;
    /// Rank at bounds + 2 in every direction, used for the stability verdict.
    std::size_t rank_next = 0;
    std::size_t kernel_dim = 0;
    std::size_t image_dim = 0;
    nlohmann::json to_json() const;
};

std::string status_name(CohomStatus s);

// ---------------------------------------------------------------------------
// Free complexes

/// A complex of free modules over ring with named generators; d raises the
/// degree by one.
class FreeComplex {
public:
    explicit FreeComplex(PolyRing ring) : ring_(std::move(ring)) {}

    void add_generator(const std::string& name, int degree);
    /// d(source) += coef * target.
    void set_differential(const std::string& source,
                          const std::vector<std::pair<std::string, Poly>>& value);

    const PolyRing& ring() const { return ring_; }
    int degree_of(const std::string& name) const;
    std::vector<std::string> generators(int degree) const;
    std::vector<int> degrees() const;
    const std::vector<std::pair<std::string, Poly>>& d(const std::string& name) const;

    /// Generators g with d(d(g)) != 0, with the offending value.
    std::vector<std::string> d_squared_failures() const;
    /// Matrix of d from degree k to k+1 (rows: degree k+1 generators).
    PolyMatrix matrix(int degree) const;

    nlohmann::json to_json() const;

private:
    PolyRing ring_;
    std::vector<std::pair<std::string, int>> gens_;
    std::map<std::string, std::vector<std::pair<std::string, Poly>>> d_;
};

/// Truncated H^degree with coefficients of degree <= polydeg.
CohomologyReport free_cohomology(const FreeComplex& c, int degree, int polydeg);

/// The eight-generator complex over k[t0,t1] with the amended differential
/// (de = 0, d ybar = 0, dm = t0 xbar - t1 zbar). Throws if d^2 != 0.
FreeComplex sphere_complex(const Field& field);
/// Same generators with dm = t1 xbar - t0 zbar as printed; d^2 fails.
FreeComplex sphere_complex_printed_dm(const Field& field);

struct SphereReport {
    std::vector<CohomologyReport> degrees;  // -2 .. 3
    std::vector<std::size_t> ranks() const;
    bool d_squared_zero = false;
    nlohmann::json to_json() const;
};

SphereReport sphere_report(const Field& field, int polydeg = 6);

// ---------------------------------------------------------------------------
// DG quiver algebras

/// Truncated H^{-m}(e_target * pres * e_source): words of length <= len,
/// coefficients of degree <= polydeg.
CohomologyReport truncated_cohomology(const Presentation& pres, int source, int target, int m,
                                      Bounds bounds);

/// Integer weights on coefficient variables and arrows. When every rule and
/// differential is homogeneous, each weight piece is a finite direct summand
/// of the complex and truncating by total weight is exact piece by piece.
struct Grading {
    std::vector<int> var_weights;
    std::map<std::string, int> arrow_weights;
};

/// Rules or differentials that are not homogeneous for g.
std::vector<std::string> grading_violations(const Presentation& pres, const Grading& g);

/// H^{-m}(e_target * pres * e_source) summed over weights <= weight_bound.
/// Throws if g is not a grading or some weight-0 arrow has degree 0.
CohomologyReport graded_cohomology(const Presentation& pres, int source, int target, int m,
                                   const Grading& g, int weight_bound);

struct H0Presentation {
    Bounds bounds;
    /// Degree-0 irreducible words per (source, target).
    std::map<std::pair<int, int>, std::vector<Path>> basis;
    /// d of each degree -1 arrow.
    std::vector<std::pair<std::string, Element>> ideal_generators;
    std::map<std::string, Element> cosets;
    /// Arrow*generator and generator*arrow products that failed membership.
    std::vector<std::string> closure_failures;
    nlohmann::json to_json(const Presentation& pres) const;
};

/// H^0 = (degree-0 part) / (two-sided ideal of d(degree -1 arrows)).
H0Presentation h0_presentation(const Presentation& pres, Bounds bounds);

/// Is x (degree 0, homogeneous in endpoints) in d(degree -1 part) at bounds?
MembershipResult h0_membership(const Presentation& pres, const Element& x, Bounds bounds);

struct RelationCheck {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool member = false;
};

struct RelationReport {
    Bounds bounds;
    std::vector<RelationCheck> checks;
    bool all_member() const;
    nlohmann::json to_json() const;
};

struct RelationInput {
    std::string name;
    Element lhs;
    Element rhs;
};

/// Checks lhs - rhs in the H^0 ideal for each relation.
RelationReport verify_relations(const Presentation& pres, const std::vector<RelationInput>& relations,
                                Bounds bounds);

/// Contraction quiver for uv = xy(x^2+y^3): f = (x, x^2+y^3, y), reversed
/// arrows, over k[x,y].
Presentation august_presentation(const Field& field);
/// The four relation families and the replayed chain, with cosets
/// m = y e1, l = x e2, a = b1, c = a1.
RelationReport august_relations(const Field& field, int bound = 10);

/// Conifold Gamma: n = 1, f = (x, y).
Presentation conifold_presentation(const Field& field);
/// Pagoda Gamma: n = 1, f = (y + x^n, y - x^n).
Presentation pagoda_presentation(const Field& field, int n);

/// dim_k H^0 of the pagoda algebra at poly bound; status from bound+2.
CohomologyReport pagoda_h0(const Field& field, int n, int polydeg);

struct PagodaChar2Report {
    int n = 0;
    /// x^n e is not found in the truncated ideal at the bound.
    bool truncated_non_member = false;
    /// y -> x^n kills both ideal generators in char 2 and sends x^n to
    /// itself, so x^n is not in the ideal at any bound.
    bool certificate = false;
    /// Over Q the same class is zero (membership witness found).
    bool rational_member = false;
    bool nontrivial() const { return truncated_non_member && certificate; }
    nlohmann::json to_json() const;
};

PagodaChar2Report char2_pagoda_check(int n, int polydeg = 8);

// ---------------------------------------------------------------------------
// Localisation

struct LocalizationRow {
    int m = 0;
    CohomologyReport localized;
    CohomologyReport gamma;
    bool agree() const;
};

struct LocalizationReport {
    int weight_bound = 0;
    std::vector<LocalizationRow> rows;
    bool consistent() const;
    nlohmann::json to_json() const;
};

/// Gradings for n = 1 with homogeneous f: variables weigh 2, a_i and b_i
/// weigh deg f_i, eps weighs 0, alpha and beta weigh 2 deg f_0 and 2 deg f_1.
/// alpha and a0*eps*b0 then have the same weight, as do beta and b1*eps*a1.
Grading localized_grading(const std::vector<Poly>& f);
Grading gamma_grading(const std::vector<Poly>& f);

/// H^{-m}(e1 (A (x) S)_{e0} e1) against H^{-m}(Gamma(1, f)) for m = 0..max_m,
/// both truncated at the same total weight. f must be homogeneous.
LocalizationReport localization_consistency(const std::vector<Poly>& f, int weight_bound,
                                            int max_m = 4);

}  // namespace tubencr
