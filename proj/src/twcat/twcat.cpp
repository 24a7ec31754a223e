#include "tubencr/twcat.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tubencr {

namespace {

void add_to(Combination& c, int b, const Poly& x) {
    if (x.is_zero()) return;
    auto it = c.find(b);
    if (it == c.end()) {
        c.emplace(b, x);
    } else {
        it->second += x;
        if (it->second.is_zero()) c.erase(it);
    }
}

void add_to(Combination& c, const Combination& d, const Poly& scale) {
    for (const auto& [b, x] : d) add_to(c, b, x * scale);
}

void add_to(TwMatrix& m, std::pair<int, int> rc, const Combination& c) {
    if (c.empty()) return;
    auto& slot = m[rc];
    for (const auto& [b, x] : c) add_to(slot, b, x);
    if (slot.empty()) m.erase(rc);
}

void prune(TwMatrix& m) {
    for (auto it = m.begin(); it != m.end();) {
        it = it->second.empty() ? m.erase(it) : std::next(it);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// AInfTable

AInfTable::AInfTable(PolyRing ring, std::vector<std::string> objects)
    : ring_(std::move(ring)), objects_(std::move(objects)) {
    for (const auto& o : objects_) {
        if (std::count(objects_.begin(), objects_.end(), o) != 1) {
            throw StructuralError("duplicate object '" + o + "'");
        }
        identities_.push_back(add_morphism("id_" + o, o, o, 0));
    }
}

int AInfTable::object_index(const std::string& name) const {
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) throw StructuralError("unknown object '" + name + "'");
    return static_cast<int>(it - objects_.begin());
}

int AInfTable::basis_index(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].name == name) return static_cast<int>(i);
    }
    throw StructuralError("unknown basis morphism '" + name + "'");
}

int AInfTable::add_morphism(std::string name, const std::string& src, const std::string& tgt,
                            int deg) {
    for (const auto& b : basis_) {
        if (b.name == name) throw StructuralError("duplicate basis morphism '" + name + "'");
    }
    basis_.push_back(BasisMorphism{std::move(name), object_index(src), object_index(tgt), deg});
    return static_cast<int>(basis_.size()) - 1;
}

bool AInfTable::is_identity(int b) const {
    return std::find(identities_.begin(), identities_.end(), b) != identities_.end();
}

void AInfTable::set_mu(const std::vector<int>& args, const Combination& value) {
    if (args.empty()) throw StructuralError("mu needs at least one argument");
    for (std::size_t k = 0; k + 1 < args.size(); ++k) {
        if (basis_[static_cast<std::size_t>(args[k])].src !=
            basis_[static_cast<std::size_t>(args[k + 1])].tgt) {
            throw StructuralError("mu entry on a non-composable tuple");
        }
    }
    for (int a : args) {
        if (is_identity(a)) throw StructuralError("identities are strict units; no entries allowed");
    }
    const int src = basis_[static_cast<std::size_t>(args.back())].src;
    const int tgt = basis_[static_cast<std::size_t>(args.front())].tgt;
    for (const auto& [b, x] : value) {
        const auto& bm = basis_[static_cast<std::size_t>(b)];
        if (bm.src != src || bm.tgt != tgt) {
            throw StructuralError("mu entry value has the wrong endpoints");
        }
        if (!(x.ring() == ring_)) throw StructuralError("mu coefficient outside ring");
    }
    Combination clean;
    for (const auto& [b, x] : value) add_to(clean, b, x);
    if (clean.empty()) {
        mu_.erase(args);
    } else {
        mu_[args] = clean;
        max_arity_ = std::max(max_arity_, static_cast<int>(args.size()));
    }
}

void AInfTable::set_mu(const std::vector<std::string>& args,
                       const std::vector<std::string>& value) {
    std::vector<int> ia;
    for (const auto& a : args) ia.push_back(basis_index(a));
    Combination c;
    for (const auto& v : value) {
        if (v == "0") continue;
        add_to(c, basis_index(v), ring_.one());
    }
    set_mu(ia, c);
}

Combination AInfTable::mu(const std::vector<int>& args) const {
    const std::size_t k = args.size();
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (basis_[static_cast<std::size_t>(args[i])].src !=
            basis_[static_cast<std::size_t>(args[i + 1])].tgt) {
            return {};
        }
    }
    if (k == 2) {
        if (is_identity(args[1])) return {{args[0], ring_.one()}};
        if (is_identity(args[0])) return {{args[1], ring_.one()}};
    } else {
        for (int a : args) {
            if (is_identity(a)) return {};
        }
    }
    auto it = mu_.find(args);
    return it == mu_.end() ? Combination{} : it->second;
}

Combination AInfTable::entry(const std::vector<std::string>& args) const {
    std::vector<int> ia;
    for (const auto& a : args) ia.push_back(basis_index(a));
    return mu(ia);
}

std::vector<int> AInfTable::hom(int src, int tgt, int deg) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].src == src && basis_[i].tgt == tgt && basis_[i].deg == deg) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::string AInfTable::format(const Combination& c) const {
    if (c.empty()) return "0";
    std::string s;
    for (const auto& [b, x] : c) {
        if (!s.empty()) s += "+";
        const std::string name = basis_[static_cast<std::size_t>(b)].name;
        s += x == ring_.one() ? name : "(" + x.to_string() + ")*" + name;
    }
    return s;
}

nlohmann::json AInfTable::to_json() const {
    nlohmann::json j;
    j["field"] = ring_.field().spec();
    j["objects"] = objects_;
    j["basis"] = nlohmann::json::array();
    for (const auto& b : basis_) {
        j["basis"].push_back({{"name", b.name},
                              {"src", objects_[static_cast<std::size_t>(b.src)]},
                              {"tgt", objects_[static_cast<std::size_t>(b.tgt)]},
                              {"deg", b.deg}});
    }
    j["mu"] = nlohmann::json::array();
    for (const auto& [args, v] : mu_) {
        std::vector<std::string> names;
        for (int a : args) names.push_back(basis_[static_cast<std::size_t>(a)].name);
        j["mu"].push_back({{"k", args.size()}, {"args", names}, {"value", format(v)}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// A-infinity relations

AInfReport ainf_check(const AInfTable& t, int max_arity) {
    if (max_arity < 1 || max_arity > 4) throw std::invalid_argument("max_arity must be in 1..4");
    AInfReport rep;
    const auto& basis = t.basis();
    // Degrees of explicit entries, by scanning all composable tuples.
    std::vector<int> trav;
    std::function<void(int)> grow = [&](int d) {
        if (!trav.empty()) {
            std::vector<int> args(trav.rbegin(), trav.rend());
            const int k = static_cast<int>(args.size());
            int deg_in = 0;
            for (int a : args) deg_in += basis[static_cast<std::size_t>(a)].deg;
            for (const auto& [b, x] : t.mu(args)) {
                if (basis[static_cast<std::size_t>(b)].deg != deg_in + 2 - k) {
                    std::string s = "mu" + std::to_string(k) + "(";
                    for (std::size_t i = 0; i < args.size(); ++i) {
                        s += (i ? "," : "") + basis[static_cast<std::size_t>(args[i])].name;
                    }
                    rep.degree_errors.push_back(s + ") has a term of the wrong degree");
                }
            }
            // A-infinity relation of arity k.
            Combination total;
            for (int j = 1; j <= k; ++j) {
                for (int s = 0; s + j <= k; ++s) {
                    std::vector<int> inner(args.begin() + s, args.begin() + s + j);
                    Combination r = t.mu(inner);
                    for (const auto& [b, x] : r) {
                        std::vector<int> outer(args.begin(), args.begin() + s);
                        outer.push_back(b);
                        outer.insert(outer.end(), args.begin() + s + j, args.end());
                        add_to(total, t.mu(outer), x);
                    }
                }
            }
            ++rep.tuples_checked;
            // Signs are ignored, so reduce coefficients mod 2 by construction
            // of the field; anything left is a violation.
            if (!total.empty()) rep.violations.push_back(AInfViolation{args, total});
        }
        if (d == 0) return;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!trav.empty() && basis[static_cast<std::size_t>(trav.back())].tgt != basis[b].src) {
                continue;
            }
            trav.push_back(static_cast<int>(b));
            grow(d - 1);
            trav.pop_back();
        }
    };
    grow(max_arity);
    std::sort(rep.degree_errors.begin(), rep.degree_errors.end());
    rep.degree_errors.erase(std::unique(rep.degree_errors.begin(), rep.degree_errors.end()),
                            rep.degree_errors.end());
    rep.ok = rep.violations.empty() && rep.degree_errors.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Twisted complexes

int effective_degree(const AInfTable& t, const TwComplex& src, const TwComplex& tgt, int col,
                     int row, int basis) {
    return t.basis()[static_cast<std::size_t>(basis)].deg +
           tgt.terms[static_cast<std::size_t>(row)].shift -
           src.terms[static_cast<std::size_t>(col)].shift;
}

namespace {

struct ChainStep {
    const TwMatrix* m;
    std::size_t src_size;
};

// Sum over generator paths of mu_m applied to the chain, traversal order.
TwMatrix evaluate_chain(const AInfTable& t, const std::vector<ChainStep>& chain,
                        std::size_t out_size) {
    TwMatrix out;
    const std::size_t m = chain.size();
    std::vector<int> args(m);  // traversal order
    for (std::size_t col = 0; col < chain.front().src_size; ++col) {
        std::function<void(std::size_t, int, const Poly&)> walk = [&](std::size_t step, int at,
                                                                      const Poly& coef) {
            if (step == m) {
                std::vector<int> display(args.rbegin(), args.rend());
                Combination r;
                add_to(r, t.mu(display), coef);
                add_to(out, {at, static_cast<int>(col)}, r);
                return;
            }
            for (const auto& [rc, comb] : *chain[step].m) {
                if (rc.second != at) continue;
                for (const auto& [b, x] : comb) {
                    args[step] = b;
                    walk(step + 1, rc.first, coef * x);
                }
            }
        };
        walk(0, static_cast<int>(col), t.ring().one());
    }
    (void)out_size;
    prune(out);
    return out;
}

}  // namespace

TwMorphism mu_tw(const AInfTable& t, const std::vector<TwMorphism>& fs,
                 const std::vector<TwComplex>& complexes) {
    const int k = static_cast<int>(fs.size());
    if (k < 1 || k > 2) throw std::invalid_argument("mu_tw supports k = 1, 2");
    if (complexes.size() != fs.size() + 1) throw std::invalid_argument("complex count mismatch");
    const int spare = t.max_arity() - k;
    TwMorphism out;
    // r[i] = number of deltas of complexes[i] inserted.
    std::vector<int> r(complexes.size(), 0);
    std::function<void(std::size_t, int)> choose = [&](std::size_t i, int left) {
        if (i == r.size()) {
            std::vector<ChainStep> chain;
            for (std::size_t c = 0; c < complexes.size(); ++c) {
                for (int rep = 0; rep < r[c]; ++rep) {
                    chain.push_back({&complexes[c].delta, complexes[c].terms.size()});
                }
                if (c < fs.size()) {
                    chain.push_back({&fs[fs.size() - 1 - c].entries, complexes[c].terms.size()});
                }
            }
            TwMatrix piece = evaluate_chain(t, chain, complexes.back().terms.size());
            for (const auto& [rc, comb] : piece) add_to(out.entries, rc, comb);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            r[i] = x;
            choose(i + 1, left - x);
        }
        r[i] = 0;
    };
    choose(0, spare);
    prune(out.entries);
    return out;
}

TwMatrix maurer_cartan(const AInfTable& t, const TwComplex& c) {
    TwMatrix out;
    for (int m = 1; m <= t.max_arity(); ++m) {
        std::vector<ChainStep> chain(static_cast<std::size_t>(m), ChainStep{&c.delta, c.terms.size()});
        for (const auto& [rc, comb] : evaluate_chain(t, chain, c.terms.size())) {
            add_to(out, rc, comb);
        }
    }
    prune(out);
    return out;
}

TwMorphism tw_identity(const AInfTable& t, const TwComplex& c) {
    TwMorphism id;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        id.entries[{static_cast<int>(i), static_cast<int>(i)}] =
            Combination{{t.identity(c.terms[i].object), t.ring().one()}};
    }
    return id;
}

bool tw_equal(const TwMorphism& a, const TwMorphism& b) {
    TwMatrix x = a.entries, y = b.entries;
    prune(x);
    prune(y);
    return x == y;
}

std::string format_matrix(const AInfTable& t, const TwMatrix& m, const TwComplex& src,
                          const TwComplex& tgt) {
    std::ostringstream os;
    os << "[";
    for (std::size_t row = 0; row < tgt.terms.size(); ++row) {
        if (row) os << "; ";
        for (std::size_t col = 0; col < src.terms.size(); ++col) {
            if (col) os << ", ";
            auto it = m.find({static_cast<int>(row), static_cast<int>(col)});
            os << (it == m.end() ? "0" : t.format(it->second));
        }
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Half-twist

AInfTable halftwist_tables(int n, Wrapping w) {
    if (n < 2) throw std::invalid_argument("half-twist tables need n >= 2");
    const std::string ln = "L" + std::to_string(n);
    const std::string an = "a" + std::to_string(n);
    AInfTable t(PolyRing::tube_coefficients(Field::prime(2), n), {"P", "L0", "L1", ln});
    t.add_morphism("b0", "L1", "L0", 0);
    t.add_morphism(an, ln, "L0", 0);
    t.add_morphism("alpha'", "P", "L1", 0);
    t.add_morphism("beta'", "P", ln, 0);
    t.add_morphism("p", "L0", "P", 1);
    t.add_morphism("pbar", "P", "L0", 0);

    t.set_mu({"b0", "alpha'"}, {"pbar"});
    t.set_mu({an, "beta'"}, {"pbar"});

    t.set_mu({"alpha'", "p", "b0"}, {"id_L1"});
    t.set_mu({"beta'", "p", an}, {"id_" + ln});
    t.set_mu({"pbar", "p", "pbar"}, {"pbar"});
    if (w == Wrapping::left) {
        t.set_mu({"b0", "alpha'", "p"}, {"id_L0"});
        t.set_mu({"p", "b0", "alpha'"}, {"id_P"});
        t.set_mu({"pbar", "p", an}, {an});
        t.set_mu({"beta'", "p", "pbar"}, {"beta'"});
    } else {
        t.set_mu({an, "beta'", "p"}, {"id_L0"});
        t.set_mu({"p", an, "beta'"}, {"id_P"});
        t.set_mu({"pbar", "p", "b0"}, {"b0"});
        t.set_mu({"alpha'", "p", "pbar"}, {"alpha'"});
    }
    return t;
}

HalftwistData halftwist_data(int n, Wrapping w) {
    AInfTable t = halftwist_tables(n, w);
    const Poly one = t.ring().one();
    const std::string ln = "L" + std::to_string(n);
    TwComplex lprime;
    lprime.terms = {{t.object_index("L1"), -1}, {t.object_index(ln), -1}, {t.object_index("L0"), 0}};
    lprime.delta[{2, 0}] = {{t.basis_index("b0"), one}};
    lprime.delta[{2, 1}] = {{t.basis_index("a" + std::to_string(n)), one}};
    TwComplex p;
    p.terms = {{t.object_index("P"), -1}};
    TwMorphism q1, q2;
    q1.entries[{0, 2}] = {{t.basis_index("p"), one}};
    q2.entries[{0, 0}] = {{t.basis_index("alpha'"), one}};
    q2.entries[{1, 0}] = {{t.basis_index("beta'"), one}};
    return HalftwistData{std::move(t), lprime, p, q1, q2};
}

namespace {

bool is_zero_morphism_of_degree(const AInfTable& t, const TwMorphism& f, const TwComplex& src,
                                const TwComplex& tgt, int deg) {
    for (const auto& [rc, comb] : f.entries) {
        for (const auto& [b, x] : comb) {
            if (effective_degree(t, src, tgt, rc.second, rc.first, b) != deg) return false;
        }
    }
    return true;
}

// Every concrete route of the given arity in the stacked diagram for
// mu2(q2, q1) lands in a hom space with no basis element of the forced
// degree.
bool routes_vanish_by_degree(const HalftwistData& d, int arity) {
    const AInfTable& t = d.table;
    const std::vector<const TwComplex*> cx{&d.lprime, &d.p, &d.lprime};
    const std::vector<const TwMatrix*> fs{&d.q1.entries, &d.q2.entries};
    const int extra = arity - 2;
    bool all = true;
    for (int r0 = 0; r0 <= extra; ++r0) {
        for (int r1 = 0; r0 + r1 <= extra; ++r1) {
            const int r2 = extra - r0 - r1;
            std::vector<const TwMatrix*> chain;
            for (int i = 0; i < r0; ++i) chain.push_back(&cx[0]->delta);
            chain.push_back(fs[0]);
            for (int i = 0; i < r1; ++i) chain.push_back(&cx[1]->delta);
            chain.push_back(fs[1]);
            for (int i = 0; i < r2; ++i) chain.push_back(&cx[2]->delta);
            std::vector<int> args;
            std::function<void(std::size_t, int, int)> walk = [&](std::size_t step, int at,
                                                                  int start) {
                if (step == chain.size()) {
                    int deg = 2 - static_cast<int>(args.size());
                    for (int a : args) deg += t.basis()[static_cast<std::size_t>(a)].deg;
                    const int s = t.basis()[static_cast<std::size_t>(args.front())].src;
                    const int g = t.basis()[static_cast<std::size_t>(args.back())].tgt;
                    if (!t.hom(s, g, deg).empty()) all = false;
                    (void)start;
                    return;
                }
                for (const auto& [rc, comb] : *chain[step]) {
                    if (rc.second != at) continue;
                    for (const auto& [b, x] : comb) {
                        args.push_back(b);
                        walk(step + 1, rc.first, start);
                        args.pop_back();
                    }
                }
            };
            for (std::size_t col = 0; col < cx[0]->terms.size(); ++col) {
                walk(0, static_cast<int>(col), static_cast<int>(col));
            }
        }
    }
    return all;
}

}  // namespace

HalftwistReport verify_halftwist(const HalftwistData& d) {
    HalftwistReport rep;
    const AInfTable& t = d.table;
    auto table = ainf_check(t, 4);
    rep.table_ok = table.ok;
    if (!table.ok) {
        for (const auto& v : table.violations) {
            std::string s = "A-infinity relation fails on (";
            for (std::size_t i = 0; i < v.args.size(); ++i) {
                s += (i ? "," : "") + t.basis()[static_cast<std::size_t>(v.args[i])].name;
            }
            rep.failures.push_back(s + ") = " + t.format(v.value));
        }
        for (const auto& e : table.degree_errors) rep.failures.push_back(e);
    }

    bool lower = true;
    for (const auto& [rc, c] : d.lprime.delta) lower = lower && rc.first > rc.second;
    rep.complexes_ok = lower && maurer_cartan(t, d.lprime).empty() &&
                       maurer_cartan(t, d.p).empty() &&
                       is_zero_morphism_of_degree(t, TwMorphism{d.lprime.delta}, d.lprime,
                                                  d.lprime, 1);
    if (!rep.complexes_ok) rep.failures.push_back("twisted complex L' is not valid");

    const bool deg_ok = is_zero_morphism_of_degree(t, d.q1, d.lprime, d.p, 0) &&
                        is_zero_morphism_of_degree(t, d.q2, d.p, d.lprime, 0);
    rep.morphisms_closed = deg_ok && mu_tw(t, {d.q1}, {d.lprime, d.p}).entries.empty() &&
                           mu_tw(t, {d.q2}, {d.p, d.lprime}).entries.empty();
    if (!rep.morphisms_closed) rep.failures.push_back("q1 or q2 is not a closed degree-0 morphism");

    TwMorphism q2q1 = mu_tw(t, {d.q2, d.q1}, {d.lprime, d.p, d.lprime});
    TwMorphism q1q2 = mu_tw(t, {d.q1, d.q2}, {d.p, d.lprime, d.p});
    rep.q2q1 = format_matrix(t, q2q1.entries, d.lprime, d.lprime);
    rep.q1q2 = format_matrix(t, q1q2.entries, d.p, d.p);
    rep.q2q1_identity = tw_equal(q2q1, tw_identity(t, d.lprime));
    rep.q1q2_identity = tw_equal(q1q2, tw_identity(t, d.p));
    if (!rep.q2q1_identity) rep.failures.push_back("mu2(q2,q1) = " + rep.q2q1 + " is not id_L'");
    if (!rep.q1q2_identity) rep.failures.push_back("mu2(q1,q2) = " + rep.q1q2 + " is not id_P");

    rep.degree_vanishing = routes_vanish_by_degree(d, 2) && routes_vanish_by_degree(d, 4);
    if (!rep.degree_vanishing) rep.failures.push_back("a length-2 or length-4 route survives");
    return rep;
}

std::vector<HalftwistReport> verify_halftwist(int n) {
    std::vector<HalftwistReport> out;
    for (Wrapping w : {Wrapping::left, Wrapping::right}) {
        HalftwistReport r = verify_halftwist(halftwist_data(n, w));
        r.wrapping = w;
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json HalftwistReport::to_json() const {
    return {{"wrapping", wrapping == Wrapping::left ? "left" : "right"},
            {"table_ok", table_ok},
            {"complexes_ok", complexes_ok},
            {"morphisms_closed", morphisms_closed},
            {"mu2_q2_q1", q2q1},
            {"mu2_q1_q2", q1q2},
            {"q2q1_identity", q2q1_identity},
            {"q1q2_identity", q1q2_identity},
            {"degree_vanishing", degree_vanishing},
            {"passed", passed()},
            {"failures", failures}};
}

// ---------------------------------------------------------------------------
// Object images

ObjectImage psi_image(int n, int i, int j) {
    const int m = n + 1;
    auto mod = [m](int x) { return ((x % m) + m) % m; };
    ObjectImage x;
    if (mod(i) != mod(j)) {
        x.generators = {{mod(j), 0}};
        return x;
    }
    x.generators = {{mod(j + 1), -1}, {mod(j - 1), -1}, {mod(j), 0}};
    x.delta = {{2, 0, "b" + std::to_string(mod(j))}, {2, 1, "a" + std::to_string(mod(j - 1))}};
    return x;
}

ObjectImage rho(int n, const ObjectImage& x) {
    const int m = n + 1;
    ObjectImage y;
    for (const auto& [arc, shift] : x.generators) y.generators.emplace_back((arc + 1) % m, shift);
    for (const auto& [to, from, name] : x.delta) {
        const int idx = std::stoi(name.substr(1));
        y.delta.emplace_back(to, from, name.substr(0, 1) + std::to_string((idx + 1) % m));
    }
    return y;
}

RingMap rho_coefficients(const PolyRing& r) {
    std::vector<Poly> images;
    const std::size_t m = r.nvars();
    for (std::size_t j = 0; j < m; ++j) images.push_back(r.variable((j + 1) % m));
    return RingMap(r, r, std::move(images));
}

std::string format_image(const ObjectImage& x) {
    auto gen = [&](std::size_t k) { return "L" + std::to_string(x.generators[k].first); };
    if (x.delta.empty()) return gen(0);
    std::string src, maps;
    for (std::size_t k = 0; k + 1 < x.generators.size(); ++k) {
        src += (k ? " + " : "") + gen(k);
    }
    for (std::size_t k = 0; k < x.delta.size(); ++k) maps += (k ? "," : "") + std::get<2>(x.delta[k]);
    return "(" + src + " --(" + maps + ")--> " + gen(x.generators.size() - 1) + ")";
}

}  // namespace tubencr
