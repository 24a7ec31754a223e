#include "tubencr/cohom.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace tubencr {

// ---------------------------------------------------------------------------
// Slice engine

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

SliceCohomology slice_cohomology(const Field& field, const LinearSlice& s) {
    if (s.outgoing.size() != s.box_dim) throw std::invalid_argument("one outgoing column per box coordinate");
    std::size_t mid = s.box_dim;
    for (const auto& c : s.incoming) {
        if (!c.empty()) mid = std::max(mid, c.rbegin()->first + 1);
    }
    std::size_t next = 0;
    for (const auto& c : s.outgoing) {
        if (!c.empty()) next = std::max(next, c.rbegin()->first + 1);
    }
    UnionFind uf(mid + next);
    for (std::size_t j = 0; j < s.box_dim; ++j) {
        for (const auto& [k, v] : s.outgoing[j]) uf.unite(j, mid + k);
    }
    for (const auto& c : s.incoming) {
        if (c.empty()) continue;
        for (const auto& [k, v] : c) uf.unite(c.begin()->first, k);
    }

    struct Block {
        std::vector<std::size_t> box;
        std::vector<const SparseVec*> incoming;
    };
    std::map<std::size_t, Block> blocks;
    for (std::size_t j = 0; j < s.box_dim; ++j) blocks[uf.find(j)].box.push_back(j);
    for (const auto& c : s.incoming) {
        if (c.empty()) continue;
        auto it = blocks.find(uf.find(c.begin()->first));
        if (it != blocks.end()) it->second.incoming.push_back(&c);
    }

    SliceCohomology out;
    out.blocks = blocks.size();
    for (const auto& [root, b] : blocks) {
        std::vector<SparseVec> cols;
        cols.reserve(b.box.size());
        for (std::size_t j : b.box) cols.push_back(s.outgoing[j]);
        std::vector<SparseVec> kernel;
        for (const auto& v : nullspace(field, cols)) {
            SparseVec g;
            for (const auto& [k, c] : v) g.emplace(b.box[k], c);
            kernel.push_back(std::move(g));
        }
        // Outside coordinates are numbered first so that echelon rows with a
        // box pivot live entirely inside the box.
        Echelon e(field);
        for (const SparseVec* c : b.incoming) {
            SparseVec r;
            for (const auto& [k, v] : *c) r.emplace(k >= s.box_dim ? k - s.box_dim : mid + k, v);
            e.insert(std::move(r));
        }
        Echelon image(field);
        std::size_t idim = 0;
        for (const auto& row : e.rows()) {
            if (row.begin()->first < mid) continue;
            SparseVec g;
            for (const auto& [k, v] : row) g.emplace(k - mid, v);
            image.insert(std::move(g));
            ++idim;
        }
        out.kernel_dim += kernel.size();
        out.image_dim += idim;
        for (auto& v : kernel) {
            if (image.insert(v)) out.representatives.push_back(std::move(v));
        }
    }
    if (out.representatives.size() != out.kernel_dim - out.image_dim) {
        throw std::logic_error("truncated image is not contained in the kernel");
    }
    return out;
}

namespace {

nlohmann::json bounds_json(const Bounds& b) {
    if (b.weight > 0) return {{"weight", b.weight}};
    return {{"len", b.len}, {"polydeg", b.polydeg}};
}

}  // namespace

std::string status_name(CohomStatus s) {
    return s == CohomStatus::stable ? "stable" : "inconclusive_at_bound";
}

nlohmann::json CohomologyReport::to_json() const {
    return {{"degree", degree},
            {"rank", rank},
            {"generators", generators},
            {"bounds", bounds_json(bounds)},
            {"status", status_name(status)}};
}

// ---------------------------------------------------------------------------
// Free complexes

void FreeComplex::add_generator(const std::string& name, int degree) {
    for (const auto& [g, d] : gens_) {
        if (g == name) throw StructuralError("duplicate generator '" + name + "'");
    }
    gens_.emplace_back(name, degree);
    d_[name];
}

int FreeComplex::degree_of(const std::string& name) const {
    for (const auto& [g, d] : gens_) {
        if (g == name) return d;
    }
    throw StructuralError("unknown generator '" + name + "'");
}

std::vector<std::string> FreeComplex::generators(int degree) const {
    std::vector<std::string> out;
    for (const auto& [g, d] : gens_) {
        if (d == degree) out.push_back(g);
    }
    return out;
}

std::vector<int> FreeComplex::degrees() const {
    std::vector<int> out;
    for (const auto& [g, d] : gens_) out.push_back(d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void FreeComplex::set_differential(const std::string& source,
                                   const std::vector<std::pair<std::string, Poly>>& value) {
    const int deg = degree_of(source);
    std::vector<std::pair<std::string, Poly>> clean;
    for (const auto& [g, c] : value) {
        if (degree_of(g) != deg + 1) {
            throw StructuralError("d(" + source + ") has a term " + g + " of the wrong degree");
        }
        if (!(c.ring() == ring_)) throw StructuralError("coefficient outside the complex ring");
        if (!c.is_zero()) clean.emplace_back(g, c);
    }
    d_[source] = std::move(clean);
}

const std::vector<std::pair<std::string, Poly>>& FreeComplex::d(const std::string& name) const {
    auto it = d_.find(name);
    if (it == d_.end()) throw StructuralError("unknown generator '" + name + "'");
    return it->second;
}

std::vector<std::string> FreeComplex::d_squared_failures() const {
    std::vector<std::string> out;
    for (const auto& [g, deg] : gens_) {
        std::map<std::string, Poly> dd;
        for (const auto& [h, c] : d(g)) {
            for (const auto& [k, e] : d(h)) {
                auto it = dd.emplace(k, ring_.zero()).first;
                it->second += c * e;
            }
        }
        std::string bad;
        for (const auto& [k, c] : dd) {
            if (!c.is_zero()) bad += (bad.empty() ? "" : " + ") + ("(" + c.to_string() + ")*" + k);
        }
        if (!bad.empty()) out.push_back("d(d(" + g + ")) = " + bad);
    }
    return out;
}

PolyMatrix FreeComplex::matrix(int degree) const {
    const auto src = generators(degree), tgt = generators(degree + 1);
    PolyMatrix m(tgt.size(), PolyVector(src.size(), ring_.zero()));
    for (std::size_t j = 0; j < src.size(); ++j) {
        for (const auto& [g, c] : d(src[j])) {
            const auto i = static_cast<std::size_t>(std::find(tgt.begin(), tgt.end(), g) - tgt.begin());
            m[i][j] += c;
        }
    }
    return m;
}

nlohmann::json FreeComplex::to_json() const {
    nlohmann::json j;
    j["ring"] = {{"field", ring_.field().spec()}, {"vars", ring_.variables()}};
    j["generators"] = nlohmann::json::array();
    for (const auto& [g, deg] : gens_) {
        nlohmann::json dj = nlohmann::json::array();
        for (const auto& [h, c] : d(g)) dj.push_back({{"target", h}, {"coef", c.to_string()}});
        j["generators"].push_back({{"name", g}, {"degree", deg}, {"d", dj}});
    }
    return j;
}

namespace {

std::string format_combination(const std::map<std::string, Poly>& terms) {
    std::string s;
    for (const auto& [g, c] : terms) {
        if (c.is_zero()) continue;
        std::string t = c.to_string();
        std::string piece;
        if (t == "1") {
            piece = g;
        } else if (t == "-1") {
            piece = "-" + g;
        } else if (c.terms().size() == 1) {
            piece = t + "*" + g;
        } else {
            piece = "(" + t + ")*" + g;
        }
        if (!s.empty() && piece[0] != '-') s += "+";
        s += piece;
    }
    return s.empty() ? "0" : s;
}

struct FreeSliceResult {
    SliceCohomology slice;
    std::vector<std::string> generators;
};

FreeSliceResult free_slice(const FreeComplex& c, int degree, int polydeg) {
    const PolyRing& r = c.ring();
    const auto monos = r.monomials_up_to(polydeg);
    std::map<Exponent, std::size_t> mono_index;
    for (std::size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
    const auto mid_gens = c.generators(degree);
    const auto prev_gens = c.generators(degree - 1);
    const auto next_gens = c.generators(degree + 1);
    auto gen_pos = [](const std::vector<std::string>& v, const std::string& g) {
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), g) - v.begin());
    };
    const std::size_t nm = monos.size();
    LinearSlice s;
    s.box_dim = mid_gens.size() * nm;
    std::map<std::pair<std::size_t, Exponent>, std::size_t> outside, next_index;
    auto mid_coord = [&](std::size_t g, const Exponent& e) {
        auto it = mono_index.find(e);
        if (it != mono_index.end()) return g * nm + it->second;
        auto [o, fresh] = outside.emplace(std::make_pair(g, e), s.box_dim + outside.size());
        return o->second;
    };
    auto next_coord = [&](std::size_t g, const Exponent& e) {
        return next_index.emplace(std::make_pair(g, e), next_index.size()).first->second;
    };
    for (const auto& g : prev_gens) {
        for (const auto& mu : monos) {
            SparseVec v;
            for (const auto& [h, coef] : c.d(g)) {
                const Poly shifted = coef.shift(mu);
                for (const auto& [e, x] : shifted.terms()) {
                    axpy(v, x, SparseVec{{mid_coord(gen_pos(mid_gens, h), e), Scalar(r.field(), 1)}});
                }
            }
            s.incoming.push_back(std::move(v));
        }
    }
    for (const auto& g : mid_gens) {
        for (const auto& mu : monos) {
            SparseVec v;
            for (const auto& [h, coef] : c.d(g)) {
                const Poly shifted = coef.shift(mu);
                for (const auto& [e, x] : shifted.terms()) {
                    axpy(v, x, SparseVec{{next_coord(gen_pos(next_gens, h), e), Scalar(r.field(), 1)}});
                }
            }
            s.outgoing.push_back(std::move(v));
        }
    }
    FreeSliceResult out{slice_cohomology(r.field(), s), {}};
    for (const auto& v : out.slice.representatives) {
        std::map<std::string, Poly> terms;
        for (const auto& [k, x] : v) {
            const auto& g = mid_gens[k / nm];
            auto it = terms.emplace(g, r.zero()).first;
            it->second += r.monomial(monos[k % nm], x);
        }
        out.generators.push_back(format_combination(terms));
    }
    return out;
}

}  // namespace

CohomologyReport free_cohomology(const FreeComplex& c, int degree, int polydeg) {
    if (polydeg < 0) throw std::invalid_argument("polydeg must be nonnegative");
    auto here = free_slice(c, degree, polydeg);
    auto next = free_slice(c, degree, polydeg + 2);
    CohomologyReport rep;
    rep.degree = degree;
    rep.rank = here.slice.rank();
    rep.rank_next = next.slice.rank();
    rep.generators = here.generators;
    rep.bounds = Bounds{0, polydeg};
    rep.kernel_dim = here.slice.kernel_dim;
    rep.image_dim = here.slice.image_dim;
    rep.status = rep.rank == rep.rank_next ? CohomStatus::stable : CohomStatus::inconclusive_at_bound;
    return rep;
}

namespace {

FreeComplex sphere_generators(const Field& field) {
    FreeComplex c(PolyRing::tube_coefficients(field, 1));
    c.add_generator("y", -2);
    c.add_generator("x", -1);
    c.add_generator("z", -1);
    c.add_generator("e", 0);
    c.add_generator("m", 1);
    c.add_generator("xbar", 2);
    c.add_generator("zbar", 2);
    c.add_generator("ybar", 3);
    const Poly t0 = c.ring().variable(0), t1 = c.ring().variable(1);
    c.set_differential("y", {{"z", t1}, {"x", -t0}});
    c.set_differential("x", {{"e", t1}});
    c.set_differential("z", {{"e", t0}});
    c.set_differential("xbar", {{"ybar", t1}});
    c.set_differential("zbar", {{"ybar", t0}});
    return c;
}

}  // namespace

FreeComplex sphere_complex(const Field& field) {
    FreeComplex c = sphere_generators(field);
    const Poly t0 = c.ring().variable(0), t1 = c.ring().variable(1);
    // de = 0 and d(ybar) = 0; dm is the unique choice in span(xbar, zbar)
    // with d^2 = 0 and nonzero image.
    c.set_differential("m", {{"xbar", t0}, {"zbar", -t1}});
    auto bad = c.d_squared_failures();
    if (!bad.empty()) throw std::logic_error("sphere complex: " + bad.front());
    return c;
}

FreeComplex sphere_complex_printed_dm(const Field& field) {
    FreeComplex c = sphere_generators(field);
    const Poly t0 = c.ring().variable(0), t1 = c.ring().variable(1);
    c.set_differential("m", {{"xbar", t1}, {"zbar", -t0}});
    return c;
}

std::vector<std::size_t> SphereReport::ranks() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.rank);
    return out;
}

nlohmann::json SphereReport::to_json() const {
    nlohmann::json j{{"d_squared_zero", d_squared_zero}, {"ranks", ranks()}};
    j["cohomology"] = nlohmann::json::array();
    for (const auto& d : degrees) j["cohomology"].push_back(d.to_json());
    return j;
}

SphereReport sphere_report(const Field& field, int polydeg) {
    SphereReport rep;
    FreeComplex c = sphere_complex(field);
    rep.d_squared_zero = c.d_squared_failures().empty();
    for (int d = -2; d <= 3; ++d) rep.degrees.push_back(free_cohomology(c, d, polydeg));
    return rep;
}

// ---------------------------------------------------------------------------
// DG quiver algebras

namespace {

using Coord = std::pair<Path, Exponent>;

class CoordIndex {
public:
    std::size_t operator()(const Path& p, const Exponent& e) {
        return map_.emplace(Coord{p, e}, map_.size()).first->second;
    }
    std::size_t size() const { return map_.size(); }

private:
    std::map<Coord, std::size_t> map_;
};

SparseVec to_vec(const Element& x, const Exponent& shift_by,
                 const std::function<std::size_t(const Path&, const Exponent&)>& coord) {
    SparseVec v;
    for (const auto& [p, c] : x.terms) {
        const Poly shifted = c.shift(shift_by);
        for (const auto& [e, s] : shifted.terms()) {
            const std::size_t k = coord(p, e);
            auto it = v.find(k);
            if (it == v.end()) {
                v.emplace(k, s);
            } else {
                it->second += s;
                if (it->second.is_zero()) v.erase(it);
            }
        }
    }
    return v;
}

struct DgSliceResult {
    SliceCohomology slice;
    std::vector<std::string> generators;
};

std::vector<Coord> product_coords(const std::vector<Path>& words, const std::vector<Exponent>& monos) {
    std::vector<Coord> out;
    out.reserve(words.size() * monos.size());
    for (const auto& w : words)
        for (const auto& mu : monos) out.emplace_back(w, mu);
    return out;
}

DgSliceResult dg_slice(const Presentation& pres, const std::vector<Coord>& mid,
                       const std::vector<Coord>& prev) {
    const PolyRing& r = pres.ring();
    std::map<Coord, std::size_t> mid_index;
    for (std::size_t i = 0; i < mid.size(); ++i) mid_index.emplace(mid[i], i);

    LinearSlice s;
    s.box_dim = mid.size();
    std::map<Coord, std::size_t> outside;
    auto mid_coord = [&](const Path& p, const Exponent& e) -> std::size_t {
        auto it = mid_index.find(Coord{p, e});
        if (it != mid_index.end()) return it->second;
        return outside.emplace(Coord{p, e}, s.box_dim + outside.size()).first->second;
    };
    CoordIndex next;
    auto next_coord = [&](const Path& p, const Exponent& e) { return next(p, e); };
    std::map<Path, Element> dcache;
    auto d_of = [&](const Path& w) -> const Element& {
        auto it = dcache.find(w);
        if (it == dcache.end()) it = dcache.emplace(w, pres.differential_of_word(w)).first;
        return it->second;
    };
    for (const auto& [w, mu] : prev) s.incoming.push_back(to_vec(d_of(w), mu, mid_coord));
    for (const auto& [w, mu] : mid) s.outgoing.push_back(to_vec(d_of(w), mu, next_coord));
    DgSliceResult out{slice_cohomology(r.field(), s), {}};
    for (const auto& v : out.slice.representatives) {
        Element x;
        for (const auto& [k, c] : v) x.add(mid[k].first, r.monomial(mid[k].second, c));
        out.generators.push_back(pres.format(x));
    }
    return out;
}

DgSliceResult box_slice(const Presentation& pres, int source, int target, int m, Bounds b) {
    const auto monos = pres.ring().monomials_up_to(b.polydeg);
    return dg_slice(pres, product_coords(pres.graded_basis(source, target, -m, b.len), monos),
                    product_coords(pres.graded_basis(source, target, -m - 1, b.len), monos));
}

int mono_weight(const Grading& g, const Exponent& e) {
    int w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += g.var_weights.at(i) * e[i];
    return w;
}

int path_weight(const Presentation& pres, const Grading& g, const Path& p) {
    int w = 0;
    for (int a : p.arrows) w += g.arrow_weights.at(pres.quiver().arrow(a).name);
    return w;
}

void check_grading(const Presentation& pres, const Grading& g) {
    if (g.var_weights.size() != pres.ring().nvars())
        throw std::invalid_argument("grading: wrong number of variable weights");
    for (int w : g.var_weights)
        if (w <= 0) throw std::invalid_argument("grading: variable weights must be positive");
    for (const auto& a : pres.quiver().arrows()) {
        auto it = g.arrow_weights.find(a.name);
        if (it == g.arrow_weights.end()) throw std::invalid_argument("grading: no weight for " + a.name);
        if (it->second < 0) throw std::invalid_argument("grading: negative weight for " + a.name);
        if (a.deg > 0) throw std::invalid_argument("grading: positive-degree arrow " + a.name);
        if (it->second == 0 && a.deg == 0)
            throw std::invalid_argument("grading: weight-0 arrow of degree 0: " + a.name);
    }
    const auto bad = grading_violations(pres, g);
    if (!bad.empty()) throw std::invalid_argument("grading: not homogeneous: " + bad.front());
}

/// Irreducible words source -> target of degree -m and weight <= bound.
std::vector<Path> weighted_words(const Presentation& pres, const Grading& g, int source, int target,
                                 int m, int bound) {
    std::vector<Path> out;
    const Quiver& q = pres.quiver();
    Path cur = Path::lazy(source);
    std::function<void(int, int)> go = [&](int weight, int deg) {
        if (deg == -m && cur.tgt == target) out.push_back(cur);
        for (int a : q.out_arrows(cur.tgt)) {
            const Arrow& arr = q.arrow(a);
            const int w = weight + g.arrow_weights.at(arr.name);
            const int d = deg + arr.deg;
            if (w > bound || d < -m) continue;
            cur.arrows.push_back(a);
            const int saved = cur.tgt;
            cur.tgt = arr.tgt;
            if (pres.is_irreducible(cur)) go(w, d);
            cur.tgt = saved;
            cur.arrows.pop_back();
        }
    };
    go(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coord> weighted_coords(const Presentation& pres, const Grading& g, int source,
                                   int target, int m, int bound) {
    const int vmin = *std::min_element(g.var_weights.begin(), g.var_weights.end());
    const auto monos = pres.ring().monomials_up_to(bound / vmin);
    std::vector<Coord> out;
    for (const auto& w : weighted_words(pres, g, source, target, m, bound)) {
        const int pw = path_weight(pres, g, w);
        for (const auto& mu : monos)
            if (pw + mono_weight(g, mu) <= bound) out.emplace_back(w, mu);
    }
    return out;
}

DgSliceResult weight_slice(const Presentation& pres, int source, int target, int m,
                           const Grading& g, int bound) {
    return dg_slice(pres, weighted_coords(pres, g, source, target, m, bound),
                    weighted_coords(pres, g, source, target, m + 1, bound));
}

CohomologyReport make_report(int m, Bounds bounds, DgSliceResult here, const DgSliceResult& next) {
    CohomologyReport rep;
    rep.degree = -m;
    rep.rank = here.slice.rank();
    rep.rank_next = next.slice.rank();
    rep.generators = std::move(here.generators);
    rep.bounds = bounds;
    rep.kernel_dim = here.slice.kernel_dim;
    rep.image_dim = here.slice.image_dim;
    rep.status = rep.rank == rep.rank_next ? CohomStatus::stable : CohomStatus::inconclusive_at_bound;
    return rep;
}

}  // namespace

CohomologyReport truncated_cohomology(const Presentation& pres, int source, int target, int m,
                                      Bounds bounds) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    if (bounds.len < 0 || bounds.polydeg < 0) throw std::invalid_argument("bounds must be nonnegative");
    auto here = box_slice(pres, source, target, m, bounds);
    auto next = box_slice(pres, source, target, m, Bounds{bounds.len + 2, bounds.polydeg + 2});
    return make_report(m, bounds, std::move(here), next);
}

std::vector<std::string> grading_violations(const Presentation& pres, const Grading& g) {
    std::vector<std::string> out;
    auto check = [&](const std::string& what, int expected, const Element& value) {
        for (const auto& [p, c] : value.terms) {
            const int pw = path_weight(pres, g, p);
            for (const auto& [e, s] : c.terms()) {
                if (pw + mono_weight(g, e) != expected) {
                    out.push_back(what);
                    return;
                }
            }
        }
    };
    for (const auto& rule : pres.rules())
        check("rule " + pres.format(rule.lhs), path_weight(pres, g, rule.lhs), rule.rhs);
    for (const auto& [a, v] : pres.differential_map())
        check("d(" + pres.quiver().arrow(a).name + ")",
              g.arrow_weights.at(pres.quiver().arrow(a).name), v);
    return out;
}

CohomologyReport graded_cohomology(const Presentation& pres, int source, int target, int m,
                                   const Grading& g, int weight_bound) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    if (weight_bound < 0) throw std::invalid_argument("weight bound must be nonnegative");
    check_grading(pres, g);
    auto here = weight_slice(pres, source, target, m, g, weight_bound);
    auto next = weight_slice(pres, source, target, m, g, weight_bound + 2);
    return make_report(m, Bounds{0, 0, weight_bound}, std::move(here), next);
}

MembershipResult h0_membership(const Presentation& pres, const Element& x, Bounds bounds) {
    MembershipResult res;
    res.bound = bounds.polydeg;
    if (x.is_zero()) {
        res.status = MembershipStatus::member;
        return res;
    }
    const Path& first = x.terms.begin()->first;
    const int src = first.src, tgt = first.tgt;
    for (const auto& [p, c] : x.terms) {
        if (p.src != src || p.tgt != tgt || pres.degree(p) != 0) {
            throw StructuralError("h0_membership needs a degree-0 element with fixed endpoints");
        }
    }
    const PolyRing& r = pres.ring();
    const auto monos = r.monomials_up_to(bounds.polydeg);
    const auto words = pres.graded_basis(src, tgt, -1, bounds.len);
    CoordIndex coord;
    auto cf = [&](const Path& p, const Exponent& e) { return coord(p, e); };
    Echelon e(r.field());
    std::size_t col = 0;
    for (const auto& w : words) {
        const Element dw = pres.differential_of_word(w);
        for (const auto& mu : monos) {
            e.insert(to_vec(dw, mu, cf), SparseVec{{col, Scalar(r.field(), 1)}});
            ++col;
        }
    }
    SparseVec combo;
    const SparseVec rest = e.reduce(to_vec(x, Exponent(r.nvars(), 0), cf), &combo);
    if (!rest.empty()) return res;
    res.status = MembershipStatus::member;
    res.witness.assign(words.size(), r.zero());
    for (const auto& [k, c] : combo) {
        res.witness[k / monos.size()] += r.monomial(monos[k % monos.size()], c);
    }
    return res;
}

H0Presentation h0_presentation(const Presentation& pres, Bounds bounds) {
    H0Presentation h;
    h.bounds = bounds;
    const auto& q = pres.quiver();
    for (const auto& a : q.arrows()) {
        if (a.deg != 0 && a.deg != -1) throw StructuralError("h0_presentation needs arrows in degrees 0 and -1");
    }
    const int nv = static_cast<int>(q.vertex_count());
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
            auto b = pres.graded_basis(i, j, 0, bounds.len);
            if (!b.empty()) h.basis[{i, j}] = std::move(b);
        }
    }
    for (std::size_t k = 0; k < q.arrow_count(); ++k) {
        const auto& a = q.arrow(static_cast<int>(k));
        if (a.deg != -1) continue;
        h.ideal_generators.emplace_back(a.name, pres.differential(pres.arrow_element(a.name)));
    }
    for (const auto& [name, g] : h.ideal_generators) {
        if (g.is_zero()) continue;
        for (const auto& a : q.arrows()) {
            if (a.deg != 0) continue;
            const Element ae = pres.arrow_element(a.name);
            for (const Element& prod : {pres.multiply(ae, g), pres.multiply(g, ae)}) {
                if (prod.is_zero()) continue;
                if (!h0_membership(pres, prod, bounds).is_member()) {
                    h.closure_failures.push_back(pres.format(prod));
                }
            }
        }
    }
    return h;
}

nlohmann::json H0Presentation::to_json(const Presentation& pres) const {
    nlohmann::json j;
    j["bounds"] = bounds_json(bounds);
    j["basis"] = nlohmann::json::array();
    for (const auto& [ij, words] : basis) {
        std::vector<std::string> names;
        for (const auto& w : words) names.push_back(pres.format(w));
        j["basis"].push_back({{"src", pres.quiver().vertices()[static_cast<std::size_t>(ij.first)]},
                              {"tgt", pres.quiver().vertices()[static_cast<std::size_t>(ij.second)]},
                              {"words", names}});
    }
    j["ideal_generators"] = nlohmann::json::array();
    for (const auto& [name, g] : ideal_generators) {
        j["ideal_generators"].push_back({{"arrow", name}, {"d", pres.format(g)}});
    }
    j["cosets"] = nlohmann::json::object();
    for (const auto& [name, x] : cosets) j["cosets"][name] = pres.format(x);
    j["two_sided"] = closure_failures.empty();
    return j;
}

bool RelationReport::all_member() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.member; });
}

nlohmann::json RelationReport::to_json() const {
    nlohmann::json j;
    j["bounds"] = bounds_json(bounds);
    j["relations"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["relations"].push_back(
            {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"verified", c.member}});
    }
    j["all_verified"] = all_member();
    return j;
}

RelationReport verify_relations(const Presentation& pres, const std::vector<RelationInput>& relations,
                                Bounds bounds) {
    RelationReport rep;
    rep.bounds = bounds;
    for (const auto& rel : relations) {
        Element diff = rel.lhs;
        diff.add_scaled(rel.rhs, -pres.ring().one());
        diff = pres.normal_form(diff);
        rep.checks.push_back(RelationCheck{rel.name, pres.format(rel.lhs), pres.format(rel.rhs),
                                           h0_membership(pres, diff, bounds).is_member()});
    }
    return rep;
}

namespace {

PolyRing xy_ring(const Field& field) { return PolyRing(field, {"x", "y"}); }

}  // namespace

Presentation august_presentation(const Field& field) {
    const PolyRing r = xy_ring(field);
    return contraction_quiver(2, r,
                              {Poly::parse(r, "x"), Poly::parse(r, "x^2+y^3"), Poly::parse(r, "y")},
                              ArrowConvention::reversed);
}

RelationReport august_relations(const Field& field, int bound) {
    const Presentation p = august_presentation(field);
    const PolyRing& r = p.ring();
    const int v1 = p.quiver().vertex_index("1"), v2 = p.quiver().vertex_index("2");
    const Element m = p.element(Path::lazy(v1), r.variable("y"));
    const Element l = p.element(Path::lazy(v2), r.variable("x"));
    const Element a = p.arrow_element("b1");
    const Element c = p.arrow_element("a1");
    auto mul = [&](const Element& x, const Element& y) { return p.multiply(x, y); };
    const Element m3 = mul(m, mul(m, m));
    const Element zero;
    std::vector<RelationInput> rels{
        {"l^2 = ac", mul(l, l), mul(a, c)},
        {"m^3 = ca", m3, mul(c, a)},
        {"la = 0", mul(l, a), zero},
        {"am = 0", mul(a, m), zero},
        {"cl = 0", mul(c, l), zero},
        {"mc = 0", mul(m, c), zero},
        {"m^3 = y^3 e1", m3, p.element(Path::lazy(v1), Poly::parse(r, "y^3"))},
        {"y^3 e1 = (y^3+x^2) e1", p.element(Path::lazy(v1), Poly::parse(r, "y^3")),
         p.element(Path::lazy(v1), Poly::parse(r, "y^3+x^2"))},
        {"(y^3+x^2) e1 = ca", p.element(Path::lazy(v1), Poly::parse(r, "y^3+x^2")), mul(c, a)},
    };
    return verify_relations(p, rels, Bounds{bound, bound});
}

Presentation conifold_presentation(const Field& field) {
    const PolyRing r = xy_ring(field);
    return contraction_quiver(1, r, {r.variable("x"), r.variable("y")});
}

Presentation pagoda_presentation(const Field& field, int n) {
    if (n < 1) throw std::invalid_argument("pagoda needs n >= 1");
    const PolyRing r = xy_ring(field);
    const std::string xn = "x^" + std::to_string(n);
    return contraction_quiver(1, r, {Poly::parse(r, "y+" + xn), Poly::parse(r, "y-" + xn)});
}

CohomologyReport pagoda_h0(const Field& field, int n, int polydeg) {
    return truncated_cohomology(pagoda_presentation(field, n), 0, 0, 0, Bounds{2, polydeg});
}

nlohmann::json PagodaChar2Report::to_json() const {
    return {{"n", n},
            {"truncated_non_member", truncated_non_member},
            {"certificate", certificate},
            {"rational_member", rational_member},
            {"nontrivial", nontrivial()}};
}

PagodaChar2Report char2_pagoda_check(int n, int polydeg) {
    PagodaChar2Report rep;
    rep.n = n;
    const Bounds b{2, polydeg};
    const std::string xn = "x^" + std::to_string(n);
    {
        const Presentation p = pagoda_presentation(Field::prime(2), n);
        const Element target = p.element(Path::lazy(0), Poly::parse(p.ring(), xn));
        rep.truncated_non_member = !h0_membership(p, target, b).is_member();
        // k[x,y] -> k[x], y -> x^n kills both d(alpha) and d(beta).
        const PolyRing kx(Field::prime(2), {"x"});
        const RingMap phi(p.ring(), kx, {kx.variable(0), Poly::parse(kx, xn)});
        bool kills = true;
        for (const auto& [name, g] : h0_presentation(p, b).ideal_generators) {
            for (const auto& [w, c] : g.terms) kills = kills && phi.apply(c).is_zero();
        }
        rep.certificate = kills && !phi.apply(Poly::parse(p.ring(), xn)).is_zero();
    }
    {
        const Presentation p = pagoda_presentation(Field::rationals(), n);
        const Element target = p.element(Path::lazy(0), Poly::parse(p.ring(), xn));
        rep.rational_member = h0_membership(p, target, b).is_member();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Localisation

bool LocalizationRow::agree() const {
    return localized.status == CohomStatus::stable && gamma.status == CohomStatus::stable &&
           localized.rank == gamma.rank;
}

bool LocalizationReport::consistent() const {
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.agree(); });
}

nlohmann::json LocalizationReport::to_json() const {
    nlohmann::json j;
    j["weight_bound"] = weight_bound;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"degree", -r.m},
                             {"localized", r.localized.to_json()},
                             {"gamma", r.gamma.to_json()},
                             {"agree", r.agree()}});
    }
    j["consistent"] = consistent();
    return j;
}

namespace {

int homogeneous_degree(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("localisation: f_i must be nonzero");
    std::optional<int> deg;
    for (const auto& [e, c] : f.terms()) {
        const int d = total_degree(e);
        if (deg && *deg != d) throw std::invalid_argument("localisation: f_i must be homogeneous");
        deg = d;
    }
    if (*deg == 0) throw std::invalid_argument("localisation: f_i must be nonconstant");
    return *deg;
}

void check_pair(const std::vector<Poly>& f) {
    if (f.size() != 2) throw std::invalid_argument("localisation consistency is for n = 1");
}

}  // namespace

Grading localized_grading(const std::vector<Poly>& f) {
    check_pair(f);
    Grading g;
    g.var_weights.assign(f[0].ring().nvars(), 2);
    for (int i = 0; i < 2; ++i) {
        const int d = homogeneous_degree(f[static_cast<std::size_t>(i)]);
        g.arrow_weights["a" + std::to_string(i)] = d;
        g.arrow_weights["b" + std::to_string(i)] = d;
    }
    g.arrow_weights["eps"] = 0;
    return g;
}

Grading gamma_grading(const std::vector<Poly>& f) {
    check_pair(f);
    Grading g;
    g.var_weights.assign(f[0].ring().nvars(), 2);
    g.arrow_weights["alpha"] = 2 * homogeneous_degree(f[0]);
    g.arrow_weights["beta"] = 2 * homogeneous_degree(f[1]);
    return g;
}

LocalizationReport localization_consistency(const std::vector<Poly>& f, int weight_bound,
                                            int max_m) {
    const Grading lg = localized_grading(f);
    const Grading gg = gamma_grading(f);
    const PolyRing& s = f[0].ring();
    const PolyRing r = PolyRing::tube_coefficients(s.field(), 1);
    const Presentation loc =
        drinfeld_localize(tube_algebra(1, r).base_change(RingMap(r, s, f)), 0);
    const Presentation gamma = contraction_quiver(1, s, f);
    LocalizationReport rep;
    rep.weight_bound = weight_bound;
    const int v1 = loc.quiver().vertex_index("1");
    for (int m = 0; m <= max_m; ++m) {
        LocalizationRow row;
        row.m = m;
        row.localized = graded_cohomology(loc, v1, v1, m, lg, weight_bound);
        row.gamma = graded_cohomology(gamma, 0, 0, m, gg, weight_bound);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace tubencr
