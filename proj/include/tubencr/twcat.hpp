#pragma once

// Finite A-infinity product tables and twisted complexes over them.
//
// Signs are not tracked: tables and all twisted-complex arithmetic are meant
// for characteristic 2. Products are written right-to-left, so
// mu2(g, f) is "g after f" and mu3(h, g, f) has f applied first.

#include <map>
#include <string>
#include <vector>

#include "tubencr/exactalg.hpp"

namespace tubencr {

struct BasisMorphism {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;
};

/// Linear combination of basis morphisms.
using Combination = std::map<int, Poly>;

class AInfTable {
public:
    /// Every object receives an identity basis element named "id_<object>"
    /// acting as a strict unit.
    AInfTable(PolyRing ring, std::vector<std::string> objects);

    int add_morphism(std::string name, const std::string& src, const std::string& tgt, int deg);
    /// Sets mu_k(args) where args are basis names in display order. value is
    /// a combination given as basis names (coefficient 1 each); "0" or an
    /// empty list clears the entry.
    void set_mu(const std::vector<std::string>& args, const std::vector<std::string>& value);
    void set_mu(const std::vector<int>& args, const Combination& value);

    const PolyRing& ring() const { return ring_; }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<BasisMorphism>& basis() const { return basis_; }
    int object_index(const std::string& name) const;
    int basis_index(const std::string& name) const;
    int identity(int object) const { return identities_.at(static_cast<std::size_t>(object)); }
    bool is_identity(int b) const;
    int max_arity() const { return max_arity_; }

    /// mu_k on basis elements in display order (args[0] applied last).
    Combination mu(const std::vector<int>& args) const;
    /// Looks up an explicit entry; 0 if unset. Mostly for reports.
    Combination entry(const std::vector<std::string>& args) const;

    /// Basis elements in hom(src, tgt) of the given degree.
    std::vector<int> hom(int src, int tgt, int deg) const;

    std::string format(const Combination& c) const;
    nlohmann::json to_json() const;

private:
    PolyRing ring_;
    std::vector<std::string> objects_;
    std::vector<BasisMorphism> basis_;
    std::vector<int> identities_;
    std::map<std::vector<int>, Combination> mu_;
    int max_arity_ = 2;
};

struct AInfViolation {
    std::vector<int> args;  // display order
    Combination value;
};

struct AInfReport {
    bool ok = true;
    std::size_t tuples_checked = 0;
    std::vector<std::string> degree_errors;
    std::vector<AInfViolation> violations;
};

/// Checks every A-infinity relation of arity <= max_arity on composable
/// tuples of basis elements, ignoring signs, plus the degree of every entry.
AInfReport ainf_check(const AInfTable& t, int max_arity);

/// Matrix of combinations; entry (row, col) maps generator col of the source
/// complex to generator row of the target.
using TwMatrix = std::map<std::pair<int, int>, Combination>;

struct TwComplex {
    struct Term {
        int object = 0;
        int shift = 0;
    };
    std::vector<Term> terms;
    TwMatrix delta;
};

struct TwMorphism {
    TwMatrix entries;
};

/// Degree of a component f: X[s] -> Y[t] is |f| + t - s.
int effective_degree(const AInfTable& t, const TwComplex& src, const TwComplex& tgt, int col,
                     int row, int basis);

/// mu^Tw_k(fs) for k = fs.size() in {1, 2}, fs in display order (fs.back()
/// applied first). complexes has k+1 entries: complexes[0] is the source of
/// fs.back(), complexes[k] the target of fs.front(). Sums over all insertions
/// of delta up to the table's maximal arity.
TwMorphism mu_tw(const AInfTable& t, const std::vector<TwMorphism>& fs,
                 const std::vector<TwComplex>& complexes);

/// Sum of mu_k(delta, ..., delta) over k >= 1; zero for a valid complex.
TwMatrix maurer_cartan(const AInfTable& t, const TwComplex& c);

TwMorphism tw_identity(const AInfTable& t, const TwComplex& c);
bool tw_equal(const TwMorphism& a, const TwMorphism& b);
std::string format_matrix(const AInfTable& t, const TwMatrix& m, const TwComplex& src,
                          const TwComplex& tgt);

enum class Wrapping { left, right };

/// The partially wrapped table for psi_0(L_0) ("P") against L0, L1, Ln over
/// F_2[t0..tn]. Requires n >= 2.
AInfTable halftwist_tables(int n, Wrapping w);

struct HalftwistReport {
    Wrapping wrapping = Wrapping::left;
    bool table_ok = false;
    bool complexes_ok = false;
    bool morphisms_closed = false;
    bool q2q1_identity = false;
    bool q1q2_identity = false;
    bool degree_vanishing = false;
    std::string q2q1;
    std::string q1q2;
    std::vector<std::string> failures;
    bool passed() const {
        return table_ok && complexes_ok && morphisms_closed && q2q1_identity && q1q2_identity &&
               degree_vanishing;
    }
    nlohmann::json to_json() const;
};

struct HalftwistData {
    AInfTable table;
    TwComplex lprime;  // L1 + Ln -> L0
    TwComplex p;       // psi_0(L_0)
    TwMorphism q1;     // L' -> P
    TwMorphism q2;     // P -> L'
};

HalftwistData halftwist_data(int n, Wrapping w);
HalftwistReport verify_halftwist(const HalftwistData& d);
std::vector<HalftwistReport> verify_halftwist(int n);

/// Object-level image of psi_i(L_j): either L_j itself or the complex
/// (L_{j+1} + L_{j-1} -> L_j) with differential (b_j, a_{j-1}).
struct ObjectImage {
    std::vector<std::pair<int, int>> generators;  // (arc index, shift)
    // (target generator, source generator, morphism name)
    std::vector<std::tuple<int, int, std::string>> delta;
    friend bool operator==(const ObjectImage&, const ObjectImage&) = default;
};

ObjectImage psi_image(int n, int i, int j);
/// rho: arc j -> j+1 and morphism indices shifted by one.
ObjectImage rho(int n, const ObjectImage& x);
/// rho on coefficients, t_j -> t_{j+1}.
RingMap rho_coefficients(const PolyRing& r);
std::string format_image(const ObjectImage& x);

}  // namespace tubencr
