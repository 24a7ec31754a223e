#include "tubencr/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tubencr/linalg.hpp"

namespace tubencr {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p)) {
        throw std::invalid_argument("not a prime below 2^31: " + std::to_string(p));
    }
    return Field(p);
}

Field Field::parse(std::string_view spec) {
    std::string s;
    for (char c : spec) {
        if (c != '_' && c != '(' && c != ')') s.push_back(static_cast<char>(std::tolower(c)));
    }
    if (s == "q" || s == "qq") return rationals();
    if (s.rfind("gf", 0) == 0) s = "f" + s.substr(2);
    if (s.size() >= 2 && s[0] == 'f' &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(c); })) {
        return prime(static_cast<std::uint32_t>(std::stoul(s.substr(1))));
    }
    throw std::invalid_argument("unrecognised field spec: " + std::string(spec));
}

std::string Field::name() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

std::string Field::spec() const {
    return is_rationals() ? "q" : "f" + std::to_string(p_);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const Field& field, long value) : value_(value), p_(field.characteristic()) {
    normalize();
}

Scalar::Scalar(const Field& field, const mpq_class& value)
    : value_(value), p_(field.characteristic()) {
    normalize();
}

void Scalar::normalize() {
    value_.canonicalize();
    if (p_ == 0) return;
    mpz_class p(p_);
    mpz_class num = value_.get_num() % p;
    mpz_class den = value_.get_den() % p;
    if (den == 0) throw StructuralError("denominator divisible by the characteristic");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    value_ = mpq_class(r);
}

Field Scalar::field() const {
    return p_ == 0 ? Field::rationals() : Field::prime(p_);
}

Scalar Scalar::parse(const Field& field, std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) {
        throw std::invalid_argument("bad scalar literal: " + std::string(text));
    }
    return Scalar(field, q);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.value_ = -value_;
    r.normalize();
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    r.value_ += o.value_;
    if (p_ != 0) {
        if (r.value_ >= p_) r.value_ -= p_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    r.value_ -= o.value_;
    if (p_ != 0) {
        if (r.value_ < 0) r.value_ += p_;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r = *this;
    r.value_ *= o.value_;
    if (p_ != 0) r.normalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Scalar r = *this;
    r.value_ = 1 / value_;
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::is_negative_display() const {
    if (p_ == 0) return value_ < 0;
    return value_ > p_ / 2;
}

std::string Scalar::to_string() const {
    if (p_ == 0) return value_.get_str();
    mpz_class v = value_.get_num();
    if (v > p_ / 2) v -= p_;
    return v.get_str();
}

// ---------------------------------------------------------------------------
// Exponents

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool DegLexGreater::operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

// ---------------------------------------------------------------------------
// PolyRing

PolyRing::PolyRing(Field field, std::vector<std::string> variables) {
    std::vector<std::string> sorted = variables;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw StructuralError("duplicate variable name in polynomial ring");
    }
    for (const auto& v : variables) {
        if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0]))) {
            throw StructuralError("bad variable name: '" + v + "'");
        }
    }
    impl_ = std::make_shared<const Impl>(Impl{field, std::move(variables)});
}

PolyRing PolyRing::tube_coefficients(const Field& field, int n) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("t" + std::to_string(i));
    return PolyRing(field, std::move(vars));
}

int PolyRing::index_of(std::string_view name) const {
    const auto& v = impl_->vars;
    auto it = std::find(v.begin(), v.end(), name);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

Poly PolyRing::zero() const { return Poly(*this); }
Poly PolyRing::one() const { return constant(1); }
Poly PolyRing::constant(long c) const { return constant(Scalar(field(), c)); }

Poly PolyRing::constant(const Scalar& c) const {
    return monomial(Exponent(nvars(), 0), c);
}

Poly PolyRing::variable(std::size_t i) const {
    if (i >= nvars()) throw StructuralError("variable index out of range");
    Exponent e(nvars(), 0);
    e[i] = 1;
    return monomial(e, scalar(1));
}

Poly PolyRing::variable(std::string_view name) const {
    const int i = index_of(name);
    if (i < 0) throw StructuralError("unknown variable '" + std::string(name) + "'");
    return variable(static_cast<std::size_t>(i));
}

Poly PolyRing::monomial(const Exponent& e, const Scalar& c) const {
    if (e.size() != nvars()) throw StructuralError("exponent length mismatch");
    Poly::Terms t;
    if (!c.is_zero()) t.emplace(e, c);
    return Poly(*this, std::move(t));
}

std::vector<Exponent> PolyRing::monomials_up_to(int bound) const {
    std::vector<Exponent> out;
    const std::size_t n = nvars();
    Exponent cur(n, 0);
    // Depth-first enumeration of all exponents with sum <= bound.
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
        cur[i] = 0;
    };
    if (bound >= 0) rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        return DegLexGreater{}(b, a);
    });
    return out;
}

bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.impl_ == b.impl_ || (a.field() == b.field() && a.variables() == b.variables());
}

std::string PolyRing::to_string() const {
    std::string s = field().name() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (i) s += ",";
        s += variables()[i];
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(PolyRing ring, Terms terms) : ring_(std::move(ring)) {
    for (auto& [e, c] : terms) {
        if (e.size() != ring_.nvars()) throw StructuralError("exponent length mismatch");
        if (!c.is_zero()) terms_.emplace(e, c);
    }
}

void Poly::check_ring(const Poly& o) const {
    if (!(ring_ == o.ring_)) {
        throw StructuralError("ring mismatch: " + ring_.to_string() + " vs " +
                              o.ring_.to_string());
    }
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

Scalar Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.scalar(0) : it->second;
}

const Exponent& Poly::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Scalar& Poly::leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.begin()->second;
}

Poly Poly::operator-() const { return scale(ring_.scalar(-1)); }

Poly& Poly::operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_ring(o);
    Poly r(ring_);
    Exponent e(ring_.nvars());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scale(const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

Poly Poly::shift(const Exponent& s) const {
    Poly r(ring_);
    for (const auto& [e, x] : terms_) {
        Exponent f = e;
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += s[i];
        r.terms_.emplace(std::move(f), x);
    }
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = ring_.one();
    Poly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

Poly Poly::with_ring(const PolyRing& ring) const {
    if (!(ring.field() == ring_.field()) || ring.nvars() != ring_.nvars()) {
        throw StructuralError("cannot reinterpret polynomial in " + ring.to_string());
    }
    return Poly(ring, terms_);
}

Poly operator*(const Scalar& c, const Poly& p) { return p.scale(c); }

bool operator==(const Poly& a, const Poly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = c.is_negative_display();
        const Scalar mag = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_.variables()[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            os << mag.to_string();
        } else if (mag.is_one()) {
            os << mono;
        } else {
            os << mag.to_string() << "*" << mono;
        }
    }
    return os.str();
}

namespace {

// Recursive-descent parser for the polynomial micro-grammar:
//   expr   := [+|-] term {(+|-) term}
//   term   := factor {* factor}
//   factor := atom [^ integer]
//   atom   := integer [/ integer] | identifier | ( expr )
class PolyParser {
public:
    PolyParser(const PolyRing& ring, std::string_view text) : ring_(ring), s_(text) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                    " in '" + std::string(s_) + "': " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    Poly expr() {
        Poly acc = ring_.zero();
        bool neg = false;
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        Poly t = term();
        acc += neg ? -t : t;
        for (;;) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        if (eat('^')) {
            const unsigned long k = std::stoul(digits());
            base = base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = digits();
            if (eat('/')) lit += "/" + digits();
            return ring_.constant(Scalar::parse(ring_.field(), lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(s_.substr(start, pos_ - start));
            if (ring_.index_of(name) < 0) fail("unknown variable '" + name + "'");
            return ring_.variable(name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const PolyRing& ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const PolyRing& ring, std::string_view text) {
    return PolyParser(ring, text).parse();
}

nlohmann::json Poly::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        terms.push_back({{"exp", e}, {"coef", c.to_string()}});
    }
    return {{"terms", terms}};
}

Poly Poly::from_json(const PolyRing& ring, const nlohmann::json& j) {
    Poly p(ring);
    for (const auto& t : j.at("terms")) {
        Exponent e = t.at("exp").get<Exponent>();
        if (e.size() != ring.nvars()) throw StructuralError("exponent length mismatch in JSON");
        p += ring.monomial(e, Scalar::parse(ring.field(), t.at("coef").get<std::string>()));
    }
    return p;
}

// ---------------------------------------------------------------------------
// RingMap

RingMap::RingMap(PolyRing source, PolyRing target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.nvars()) {
        throw StructuralError("ring map needs one image per source variable");
    }
    if (!(source_.field() == target_.field())) {
        throw StructuralError("ring map between different fields");
    }
    for (const auto& im : images_) {
        if (!(im.ring() == target_)) throw StructuralError("ring map image outside target ring");
    }
}

RingMap RingMap::identity(const PolyRing& ring) {
    std::vector<Poly> ims;
    for (std::size_t i = 0; i < ring.nvars(); ++i) ims.push_back(ring.variable(i));
    return RingMap(ring, ring, std::move(ims));
}

Poly RingMap::apply(const Poly& p) const {
    if (!(p.ring() == source_)) throw StructuralError("substitution: polynomial not in source ring");
    // Cache powers of each image as they are needed.
    std::vector<std::vector<Poly>> powers(images_.size());
    auto power = [&](std::size_t i, int k) -> const Poly& {
        auto& v = powers[i];
        if (v.empty()) v.push_back(target_.one());
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images_[i]);
        return v[static_cast<std::size_t>(k)];
    };
    Poly out = target_.zero();
    for (const auto& [e, c] : p.terms()) {
        Poly term = target_.constant(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) term = term * power(i, e[i]);
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated linear algebra

namespace {

// Linearisation of A * v with deg v_j <= bound. Unknown (j, m) has index
// j * monos.size() + position of m; output coordinates are assigned on demand.
struct Linearised {
    std::vector<Exponent> monos;
    std::vector<SparseVec> columns;
    std::map<std::pair<std::size_t, Exponent>, std::size_t> coord;

    std::size_t coordinate(std::size_t row, const Exponent& e) {
        auto [it, inserted] = coord.emplace(std::make_pair(row, e), coord.size());
        return it->second;
    }
};

Linearised linearise(const PolyRing& ring, const PolyMatrix& a, int bound) {
    Linearised lin;
    lin.monos = ring.monomials_up_to(bound);
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (const auto& row : a) {
        if (row.size() != cols) throw StructuralError("ragged polynomial matrix");
        for (const auto& p : row) {
            if (!(p.ring() == ring)) throw StructuralError("matrix entry outside ring");
        }
    }
    for (std::size_t j = 0; j < cols; ++j) {
        for (const auto& m : lin.monos) {
            SparseVec col;
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (const auto& [e, c] : a[i][j].terms()) {
                    Exponent f = e;
                    for (std::size_t k = 0; k < f.size(); ++k) f[k] += m[k];
                    axpy(col, c, SparseVec{{lin.coordinate(i, f), ring.scalar(1)}});
                }
            }
            lin.columns.push_back(std::move(col));
        }
    }
    return lin;
}

PolyVector to_poly_vector(const PolyRing& ring, const SparseVec& v, std::size_t cols,
                          const std::vector<Exponent>& monos) {
    PolyVector out(cols, ring.zero());
    for (const auto& [idx, c] : v) {
        out[idx / monos.size()] += ring.monomial(monos[idx % monos.size()], c);
    }
    return out;
}

int vector_degree(const PolyVector& v) {
    int d = -1;
    for (const auto& p : v) d = std::max(d, p.degree());
    return d;
}

PolyVector normalised(const PolyVector& v) {
    for (const auto& p : v) {
        if (!p.is_zero()) {
            const Scalar inv = p.leading_coefficient().inverse();
            PolyVector out;
            for (const auto& q : v) out.push_back(q.scale(inv));
            return out;
        }
    }
    return v;
}

SparseVec to_sparse(const PolyVector& v, const std::vector<Exponent>& monos) {
    SparseVec out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        for (const auto& [e, c] : v[j].terms()) {
            auto it = std::find(monos.begin(), monos.end(), e);
            if (it == monos.end()) throw std::logic_error("monomial beyond bound");
            out.emplace(j * monos.size() + static_cast<std::size_t>(it - monos.begin()), c);
        }
    }
    return out;
}

}  // namespace

KernelResult truncated_kernel(const PolyRing& ring, const PolyMatrix& a, int degree_bound) {
    KernelResult res;
    res.bound = degree_bound;
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    const auto all_monos = ring.monomials_up_to(degree_bound);

    // Submodule spanned by generators found so far, in bound-level coordinates.
    // Coordinates are numbered with high-degree monomials first so that
    // reduced representatives keep low-degree support.
    auto flip = [&](const SparseVec& v) {
        SparseVec out;
        const std::size_t m = all_monos.size();
        for (const auto& [idx, c] : v) {
            const std::size_t j = idx / m;
            const std::size_t pos = idx % m;
            out.emplace((m - 1 - pos) * cols + j, c);
        }
        return out;
    };
    auto unflip = [&](const SparseVec& v) {
        SparseVec out;
        const std::size_t m = all_monos.size();
        for (const auto& [idx, c] : v) {
            const std::size_t j = idx % cols;
            const std::size_t pos = m - 1 - idx / cols;
            out.emplace(j * m + pos, c);
        }
        return out;
    };
    Echelon span(ring.field());

    for (int d = 0; d <= degree_bound; ++d) {
        // New multiples x^a g with deg(a) + deg(g) == d.
        for (const auto& g : res.generators) {
            const int need = d - vector_degree(g);
            if (need < 0) continue;
            for (const auto& m : all_monos) {
                if (total_degree(m) != need) continue;
                PolyVector mg;
                for (const auto& p : g) mg.push_back(p.shift(m));
                span.insert(flip(to_sparse(mg, all_monos)));
            }
        }
        Linearised lin = linearise(ring, a, d);
        for (const auto& null : nullspace(ring.field(), lin.columns)) {
            PolyVector v = to_poly_vector(ring, null, cols, lin.monos);
            SparseVec flat = flip(to_sparse(v, all_monos));
            SparseVec rem = span.reduce(flat);
            if (rem.empty()) continue;
            PolyVector g = normalised(to_poly_vector(ring, unflip(rem), cols, all_monos));
            span.insert(flip(to_sparse(g, all_monos)));
            res.generators.push_back(std::move(g));
        }
        if (d == degree_bound) {
            for (const auto& null : nullspace(ring.field(), lin.columns)) {
                res.basis.push_back(to_poly_vector(ring, null, cols, lin.monos));
            }
        }
    }
    return res;
}

MembershipResult truncated_membership(const PolyRing& ring, const PolyMatrix& a,
                                      const PolyVector& target, int degree_bound) {
    if (target.size() != a.size()) throw StructuralError("target length != row count");
    MembershipResult res;
    res.bound = degree_bound;
    Linearised lin = linearise(ring, a, degree_bound);
    Echelon e(ring.field());
    for (std::size_t j = 0; j < lin.columns.size(); ++j) {
        e.insert(lin.columns[j], SparseVec{{j, ring.scalar(1)}});
    }
    SparseVec t;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (!(target[i].ring() == ring)) throw StructuralError("target outside ring");
        for (const auto& [ex, c] : target[i].terms()) {
            auto it = lin.coord.find({i, ex});
            if (it == lin.coord.end()) return res;  // monomial unreachable at this bound
            t.emplace(it->second, c);
        }
    }
    SparseVec combo;
    if (!e.reduce(t, &combo).empty()) return res;
    res.status = MembershipStatus::member;
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    res.witness = to_poly_vector(ring, combo, cols, lin.monos);
    return res;
}

}  // namespace tubencr
