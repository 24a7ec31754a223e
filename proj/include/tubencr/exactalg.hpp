#pragma once

// Exact coefficient arithmetic: the rationals and prime fields, sparse
// multivariate polynomials in degree-lexicographic order, and ring maps.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace tubencr {

/// Raised when operands live in incompatible structures (different rings,
/// non-composable paths, malformed presentations).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Either the rationals or F_p with p prime, p < 2^31.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p);

    /// Accepts "q", "Q", "f5", "F5", "F_5", "GF(5)".
    static Field parse(std::string_view spec);

    bool is_rationals() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }

    /// Canonical name: "Q" or "F5".
    std::string name() const;
    /// CLI spelling: "q" or "f5".
    std::string spec() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

/// An element of a Field. Elements of F_p are stored as integers in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(const Field& field, long value);
    Scalar(const Field& field, const mpq_class& value);

    /// Parses "3", "-7", "3/2" (the latter requires an invertible denominator).
    static Scalar parse(const Field& field, std::string_view text);

    Field field() const;
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }
    const mpq_class& value() const { return value_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    /// Elements of F_p print as their representative in (-p/2, p/2].
    std::string to_string() const;
    bool is_negative_display() const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.p_ == b.p_ && a.value_ == b.value_;
    }

private:
    void normalize();
    mpq_class value_ = 0;
    std::uint32_t p_ = 0;
};

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Degree-lexicographic comparison; returns true when a is strictly larger.
struct DegLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class Poly;

/// k[v_0, ..., v_{m-1}] with a fixed variable order. Cheap to copy.
class PolyRing {
public:
    PolyRing(Field field, std::vector<std::string> variables);

    /// k[t0, ..., tn].
    static PolyRing tube_coefficients(const Field& field, int n);

    const Field& field() const { return impl_->field; }
    std::size_t nvars() const { return impl_->vars.size(); }
    const std::vector<std::string>& variables() const { return impl_->vars; }
    /// Index of a variable name, or -1.
    int index_of(std::string_view name) const;

    Poly zero() const;
    Poly one() const;
    Poly constant(long c) const;
    Poly constant(const Scalar& c) const;
    Poly variable(std::size_t i) const;
    Poly variable(std::string_view name) const;
    Poly monomial(const Exponent& e, const Scalar& c) const;
    Scalar scalar(long c) const { return Scalar(field(), c); }

    /// All exponent vectors of total degree <= bound, in ascending deglex order.
    std::vector<Exponent> monomials_up_to(int bound) const;

    friend bool operator==(const PolyRing& a, const PolyRing& b);
    std::string to_string() const;

private:
    struct Impl {
        Field field;
        std::vector<std::string> vars;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Sparse polynomial; terms are kept in descending deglex order with no zero
/// coefficients.
class Poly {
public:
    using Terms = std::map<Exponent, Scalar, DegLexGreater>;

    explicit Poly(PolyRing ring) : ring_(std::move(ring)) {}
    Poly(PolyRing ring, Terms terms);

    const PolyRing& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int degree() const;
    Scalar coefficient(const Exponent& e) const;
    const Exponent& leading_exponent() const;
    const Scalar& leading_coefficient() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scale(const Scalar& c) const;
    Poly shift(const Exponent& e) const;
    Poly pow(unsigned k) const;

    /// Same polynomial viewed in another ring with identical field and
    /// variable count.
    Poly with_ring(const PolyRing& ring) const;

    /// "3*t0^2*t1 - 1"
    std::string to_string() const;
    static Poly parse(const PolyRing& ring, std::string_view text);

    nlohmann::json to_json() const;
    static Poly from_json(const PolyRing& ring, const nlohmann::json& j);

    friend bool operator==(const Poly& a, const Poly& b);

private:
    void add_term(const Exponent& e, const Scalar& c);
    void check_ring(const Poly& o) const;

    PolyRing ring_;
    Terms terms_;
};

Poly operator*(const Scalar& c, const Poly& p);

/// A ring homomorphism determined by images of the source variables.
class RingMap {
public:
    RingMap(PolyRing source, PolyRing target, std::vector<Poly> images);

    static RingMap identity(const PolyRing& ring);

    const PolyRing& source() const { return source_; }
    const PolyRing& target() const { return target_; }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Poly& p) const;

private:
    PolyRing source_;
    PolyRing target_;
    std::vector<Poly> images_;
};

inline Poly substitute(const Poly& p, const RingMap& m) { return m.apply(p); }

// ---------------------------------------------------------------------------
// Truncated exact linear algebra over polynomial matrices.

/// Rows x columns.
using PolyMatrix = std::vector<std::vector<Poly>>;
using PolyVector = std::vector<Poly>;

struct KernelResult {
    int bound = 0;
    /// k-basis of {v : A v = 0, deg v_j <= bound}.
    std::vector<PolyVector> basis;
    /// Module generators found up to the bound, lowest degree first.
    std::vector<PolyVector> generators;
};

enum class MembershipStatus { member, inconclusive_at_bound };

struct MembershipResult {
    MembershipStatus status = MembershipStatus::inconclusive_at_bound;
    int bound = 0;
    /// Coefficients c with A c = target when status == member.
    PolyVector witness;
    bool is_member() const { return status == MembershipStatus::member; }
};

KernelResult truncated_kernel(const PolyRing& ring, const PolyMatrix& a, int degree_bound);

/// Decides target in column span with coefficient degrees <= bound. A negative
/// answer is reported as inconclusive, never as a proof of non-membership.
MembershipResult truncated_membership(const PolyRing& ring, const PolyMatrix& a,
                                      const PolyVector& target, int degree_bound);

}  // namespace tubencr
