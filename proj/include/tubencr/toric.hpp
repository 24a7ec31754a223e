#pragma once

// B-side: Cox ring k[x0..xn, y0..yn] with the torus T = Gm^n acting by
// weight(x_i) = chi_{i+1} - chi_i, weight(y_i) = -weight(x_i), where
// chi_0 = chi_{n+1} = 0. Sections of M_i are the monomials of weight chi_i;
// vertex 0 of the tube algebra is O, vertex i is M_i.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubencr/quivalg.hpp"

namespace tubencr {

struct WeightMonomial {
    Exponent c;  // exponents of x0..xn
    Exponent d;  // exponents of y0..yn
    friend bool operator==(const WeightMonomial&, const WeightMonomial&) = default;
    friend auto operator<=>(const WeightMonomial&, const WeightMonomial&) = default;
    int degree() const { return total_degree(c) + total_degree(d); }
    /// No x_k y_k factor, i.e. min(c_k, d_k) = 0 for every k.
    bool reduced() const;
    std::string to_string() const;
};

using TorusWeight = std::vector<int>;

WeightMonomial x_monomial(int n, int k);
WeightMonomial y_monomial(int n, int k);
WeightMonomial operator*(const WeightMonomial& a, const WeightMonomial& b);

TorusWeight weight(const WeightMonomial& m, int n);
/// chi_i as a vector in Z^n; chi_0 is zero.
TorusWeight character(int n, int i);

/// Variables x0..xn, y0..yn.
PolyRing cox_ring(const Field& field, int n);
Poly to_poly(const PolyRing& cox, const WeightMonomial& m);
/// Ring map k[t0..tn] -> Cox ring, t_k -> x_k y_k.
RingMap t_to_cox(const PolyRing& coefficients, const PolyRing& cox);

/// Every monomial of weight w and total degree <= bound, sorted.
std::vector<WeightMonomial> weight_monomials(int n, const TorusWeight& w, int bound);
/// The reduced ones only.
std::vector<WeightMonomial> reduced_weight_monomials(int n, const TorusWeight& w, int bound);
/// m = t^s * r with r reduced; returns (s, r).
std::pair<Exponent, WeightMonomial> split_t(const WeightMonomial& m);

WeightMonomial sigma(int n, int i);  // x0 ... x_{i-1}
WeightMonomial tau(int n, int i);    // y_i ... y_n

enum class SectionStatus { complete, inconclusive_at_bound };

/// m = t^t_power * u^u_power * sigma_i   (via_sigma)
///   = t^t_power * v^v_power * tau_i     (otherwise)
struct SectionCertificate {
    WeightMonomial section;
    bool via_sigma = true;
    Exponent t_power;
    int uv_power = 0;
};

struct SectionBasis {
    int i = 0;
    int n = 0;
    int bound = 0;
    SectionStatus status = SectionStatus::complete;
    TorusWeight target;
    std::vector<WeightMonomial> monomials;
    std::vector<SectionCertificate> certificates;
    /// Images of (sigma_i, tau_i) in an isomorphic ideal of R[u,v]/(uv - t0..tn).
    std::pair<std::string, std::string> ideal;
    /// The two module relations between sigma_i and tau_i.
    std::vector<std::string> relations;
    nlohmann::json to_json() const;
};

SectionBasis section_basis(int i, int n, int degree_bound);
/// Recomputes the certificate product in the Cox ring.
bool check_certificate(int n, int i, const SectionCertificate& c);

/// Component k (k = 0..n-1) of s_1 ^ ... ^ s_{n-1}:
/// sigma_1 ... sigma_k tau_{k+2} ... tau_n.
std::vector<WeightMonomial> wedge_components(int n);
/// Bit k of mask (k < n+1) zeroes x_k; bit n+1+k zeroes y_k.
bool vanishes(const WeightMonomial& m, int n, unsigned mask);
/// Some j < k with x_j = y_k = 0 under the pattern.
std::optional<std::pair<int, int>> instability_witness(int n, unsigned mask);

struct WedgeReport {
    int n = 0;
    std::size_t patterns = 0;
    std::size_t degenerate_patterns = 0;
    bool holds = false;
    std::optional<unsigned> counterexample;
    nlohmann::json to_json() const;
};

WedgeReport wedge_nonvanishing(int n);

int default_toric_bound(int n);

/// Cox monomial of a path: a_k -> x_k, b_k -> y_k, lazy -> 1.
WeightMonomial path_image(const Presentation& tube, const Path& p, int n);

struct EndReport {
    int n = 0;
    int bound = 0;
    bool bijective = false;
    bool multiplicative = false;
    std::size_t basis_size = 0;
    std::size_t pairs_checked = 0;
    /// ranks[(i,j)][len] = number of basis elements of hom(M_i, M_j) of that degree.
    std::map<std::pair<int, int>, std::vector<int>> ranks;
    std::map<std::string, std::string> generator_images;
    std::optional<std::string> counterexample;
    bool passed() const { return bijective && multiplicative; }
    nlohmann::json to_json() const;
};

EndReport end_algebra(int n, int length_bound, const Field& field = Field::rationals());

struct BaseChangeReport {
    int n = 0;
    int bound = 0;
    bool ok = false;
    std::size_t pairs_checked = 0;
    std::vector<std::string> relations;
    std::optional<std::string> counterexample;
    nlohmann::json to_json() const;
};

/// Structure constants of the toric End algebra, substituted through
/// t_i -> f_i, against normal forms in tube_algebra(n) base-changed by f.
BaseChangeReport base_change_end(int n, const std::vector<Poly>& f, int length_bound);

}  // namespace tubencr
