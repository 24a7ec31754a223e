#pragma once

// Graded quivers with rewriting relations and a Leibniz differential.
//
// Composition is right-to-left: the word "a0*b0" traverses b0 first and then
// a0. Internally a Path stores its arrows in traversal order.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tubencr/exactalg.hpp"

namespace tubencr {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;
};

class Quiver {
public:
    Quiver() = default;
    explicit Quiver(std::vector<std::string> vertices);

    int add_vertex(std::string label);
    int add_arrow(std::string name, int src, int tgt, int deg = 0);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int i) const { return arrows_.at(static_cast<std::size_t>(i)); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    int vertex_index(std::string_view label) const;
    int arrow_index(std::string_view name) const;
    const std::vector<int>& out_arrows(int v) const { return out_[static_cast<std::size_t>(v)]; }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> out_;
};

/// A path: lazy (no arrows, src == tgt) or a composable arrow sequence in
/// traversal order. Ordered by length, then source, then arrow indices read
/// in display order.
struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;

    bool is_lazy() const { return arrows.empty(); }
    std::size_t length() const { return arrows.size(); }

    static Path lazy(int v) { return Path{v, v, {}}; }

    friend bool operator==(const Path&, const Path&) = default;
    friend bool operator<(const Path& a, const Path& b) {
        if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
        if (a.src != b.src) return a.src < b.src;
        if (a.arrows != b.arrows) {
            return std::lexicographical_compare(a.arrows.rbegin(), a.arrows.rend(),
                                                b.arrows.rbegin(), b.arrows.rend());
        }
        return a.tgt < b.tgt;
    }
};

/// Linear combination of paths with coefficients in the presentation's
/// coefficient ring. Stored words are not necessarily reduced; elements
/// returned by Presentation operations are in normal form.
struct Element {
    std::map<Path, Poly> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Path& p, const Poly& c);
    void add(const Element& e);
    void add_scaled(const Element& e, const Poly& c);
    Element operator-() const;
    friend bool operator==(const Element&, const Element&) = default;
};

struct RewriteRule {
    Path lhs;
    Element rhs;
};

enum class Strategy { leftmost, rightmost, random };

struct CriticalPair {
    std::size_t rule_a = 0;
    std::size_t rule_b = 0;
    Path word;
    Element via_a;
    Element via_b;
};

struct ConfluenceReport {
    bool confluent = true;
    std::size_t overlaps_checked = 0;
    std::vector<CriticalPair> unresolved;
};

/// Quiver, coefficient ring, rewrite rules and differential on arrows.
class Presentation {
public:
    Presentation(Quiver quiver, PolyRing ring);

    const Quiver& quiver() const { return quiver_; }
    const PolyRing& ring() const { return ring_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const std::map<int, Element>& differential_map() const { return diff_; }
    bool has_differential() const { return !diff_.empty(); }

    /// Adds lhs -> rhs. Rejects rules whose rhs is not smaller than lhs in
    /// the length-lexicographic order (termination) or whose endpoints or
    /// degree disagree.
    void add_rule(const Path& lhs, const Element& rhs);
    void add_rule(std::string_view lhs, std::string_view rhs);
    /// Sets d(arrow). Rejects terms with wrong endpoints or degree.
    void set_differential(int arrow, const Element& value);
    void set_differential(std::string_view arrow, std::string_view value);

    // --- words and elements ---------------------------------------------
    /// Parses "a0*b0" or "e1" (display order, right-to-left composition).
    Path word(std::string_view display) const;
    Element element(const Path& p) const;
    Element element(const Path& p, const Poly& c) const;
    Element lazy(int v) const { return element(Path::lazy(v)); }
    Element unit() const;
    /// Parses "t0*a0 + (x^2+y)*e1 - alpha*beta".
    Element parse(std::string_view text) const;
    Element arrow_element(std::string_view name) const;

    std::string format(const Path& p) const;
    std::string format(const Element& e) const;

    int degree(const Path& p) const;
    /// Composable concatenation in display order: x*y (y first). nullopt if
    /// target(y) != source(x).
    std::optional<Path> compose(const Path& x, const Path& y) const;
    /// Path from display-order arrow names; throws if not composable.
    Path compose_names(const std::vector<std::string>& display) const;

    // --- algebra ------------------------------------------------------------
    bool is_irreducible(const Path& p) const;
    Element normal_form(const Element& e, Strategy s = Strategy::leftmost,
                        std::mt19937_64* rng = nullptr) const;
    Element normal_form(const Path& p) const { return normal_form(element(p)); }
    Element multiply(const Element& x, const Element& y) const;
    Element differential(const Element& x) const;
    Element differential_of_word(const Path& p) const;

    ConfluenceReport check_confluence() const;
    /// d(lhs) == d(rhs) for every rule and d(d(arrow)) == 0.
    std::vector<std::string> check_differential() const;

    /// Irreducible words from src to tgt of homological degree deg with at
    /// most length_bound arrows, canonically sorted.
    std::vector<Path> graded_basis(int src, int tgt, int deg, int length_bound) const;
    /// A uniformly random composable word (not reduced) of the given length.
    Path random_word(std::mt19937_64& rng, int length) const;

    /// Same quiver, rules and differential with coefficients pushed through m.
    Presentation base_change(const RingMap& m) const;

    nlohmann::json to_json() const;
    static Presentation from_json(const nlohmann::json& j);
    std::string dump() const;

private:
    struct Occurrence {
        std::size_t pos;
        std::size_t rule;
    };
    std::vector<Occurrence> occurrences(const Path& p) const;
    Element apply_rule(const Path& p, const Occurrence& occ) const;
    Path splice(const Path& p, std::size_t pos, std::size_t len, const Path& w) const;
    void check_path(const Path& p) const;

    Quiver quiver_;
    PolyRing ring_;
    std::vector<RewriteRule> rules_;
    std::map<std::vector<int>, std::size_t> rule_index_;
    std::size_t max_lhs_ = 0;
    std::map<int, Element> diff_;
};

// ---------------------------------------------------------------------------
// Named presentations.

/// Cyclic quiver on vertices 0..n, a_i: i -> i+1, b_i: i+1 -> i, with
/// a_i*b_i -> t_i e_{i+1} and b_i*a_i -> t_i e_i. ring has n+1 variables.
Presentation tube_algebra(int n, const PolyRing& ring);

/// Arrow orientation for the contraction quiver. Standard matches
/// tube_algebra; reversed is a_i: i+1 -> i, b_i: i -> i+1 with
/// a_i*b_i = f_i e_i and b_i*a_i = f_i e_{i+1}.
enum class ArrowConvention { standard, reversed };

/// Linear quiver on 1..n with arrows a_i, b_i (i = 1..n-1) in degree 0 and
/// loops alpha at 1, beta at n in degree -1; alpha^2 = beta^2 = 0,
/// d(alpha) = f_0 e_1, d(beta) = f_n e_n.
Presentation contraction_quiver(int n, const PolyRing& ring, const std::vector<Poly>& f,
                                ArrowConvention convention = ArrowConvention::standard);

/// Adjoins a loop "eps" of degree -1 at vertex with d(eps) = e_vertex.
Presentation drinfeld_localize(const Presentation& pres, int vertex);

/// Sum over all vertices i of the full a-cycle (resp. b-cycle) based at i.
Element tube_u(const Presentation& tube, int n);
Element tube_v(const Presentation& tube, int n);

}  // namespace tubencr
