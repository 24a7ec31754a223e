#include "tubencr/quivalg.hpp"

#include <cctype>
#include <sstream>

namespace tubencr {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Splits at depth-0 occurrences of sep.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_monomial_term(const Poly& c) { return c.terms().size() == 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Quiver

Quiver::Quiver(std::vector<std::string> vertices) {
    for (auto& v : vertices) add_vertex(std::move(v));
}

int Quiver::add_vertex(std::string label) {
    if (vertex_index(label) >= 0) throw StructuralError("duplicate vertex '" + label + "'");
    vertices_.push_back(std::move(label));
    out_.emplace_back();
    return static_cast<int>(vertices_.size()) - 1;
}

int Quiver::add_arrow(std::string name, int src, int tgt, int deg) {
    if (arrow_index(name) >= 0) throw StructuralError("duplicate arrow '" + name + "'");
    const int nv = static_cast<int>(vertices_.size());
    if (src < 0 || src >= nv || tgt < 0 || tgt >= nv) {
        throw StructuralError("arrow '" + name + "' has an endpoint outside the quiver");
    }
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
        throw StructuralError("bad arrow name '" + name + "'");
    }
    arrows_.push_back(Arrow{std::move(name), src, tgt, deg});
    const int idx = static_cast<int>(arrows_.size()) - 1;
    out_[static_cast<std::size_t>(src)].push_back(idx);
    return idx;
}

int Quiver::vertex_index(std::string_view label) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] == label) return static_cast<int>(i);
    }
    return -1;
}

int Quiver::arrow_index(std::string_view name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        if (arrows_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Element

void Element::add(const Path& p, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
        terms.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

void Element::add(const Element& e) {
    for (const auto& [p, c] : e.terms) add(p, c);
}

void Element::add_scaled(const Element& e, const Poly& c) {
    if (c.is_zero()) return;
    for (const auto& [p, x] : e.terms) add(p, x * c);
}

Element Element::operator-() const {
    Element r;
    for (const auto& [p, c] : terms) r.terms.emplace(p, -c);
    return r;
}

// ---------------------------------------------------------------------------
// Presentation: construction

Presentation::Presentation(Quiver quiver, PolyRing ring)
    : quiver_(std::move(quiver)), ring_(std::move(ring)) {}

void Presentation::check_path(const Path& p) const {
    const int nv = static_cast<int>(quiver_.vertex_count());
    if (p.src < 0 || p.src >= nv || p.tgt < 0 || p.tgt >= nv) {
        throw StructuralError("path endpoint outside the quiver");
    }
    if (p.is_lazy()) {
        if (p.src != p.tgt) throw StructuralError("lazy path with distinct endpoints");
        return;
    }
    int at = p.src;
    for (int a : p.arrows) {
        const Arrow& ar = quiver_.arrow(a);
        if (ar.src != at) throw StructuralError("non-composable word");
        at = ar.tgt;
    }
    if (at != p.tgt) throw StructuralError("word target mismatch");
}

void Presentation::add_rule(const Path& lhs, const Element& rhs) {
    check_path(lhs);
    if (lhs.is_lazy()) throw StructuralError("rule with lazy left-hand side");
    if (rule_index_.count(lhs.arrows)) {
        throw StructuralError("duplicate rule for " + format(lhs));
    }
    const int d = degree(lhs);
    for (const auto& [w, c] : rhs.terms) {
        check_path(w);
        if (w.src != lhs.src || w.tgt != lhs.tgt) {
            throw StructuralError("rule " + format(lhs) + " changes endpoints");
        }
        if (degree(w) != d) throw StructuralError("rule " + format(lhs) + " changes degree");
        if (!(w < lhs)) {
            throw StructuralError("rule " + format(lhs) + " -> " + format(rhs) +
                                  " is not order-decreasing; termination not guaranteed");
        }
        if (!(c.ring() == ring_)) throw StructuralError("rule coefficient outside ring");
    }
    rule_index_.emplace(lhs.arrows, rules_.size());
    max_lhs_ = std::max(max_lhs_, lhs.length());
    rules_.push_back(RewriteRule{lhs, rhs});
}

void Presentation::add_rule(std::string_view lhs, std::string_view rhs) {
    add_rule(word(lhs), parse(rhs));
}

void Presentation::set_differential(int arrow, const Element& value) {
    const Arrow& a = quiver_.arrow(arrow);
    for (const auto& [w, c] : value.terms) {
        check_path(w);
        if (w.src != a.src || w.tgt != a.tgt) {
            throw StructuralError("d(" + a.name + ") has a term with wrong endpoints");
        }
        if (degree(w) != a.deg + 1) {
            throw StructuralError("d(" + a.name + ") must raise degree by exactly 1");
        }
        if (!(c.ring() == ring_)) throw StructuralError("differential coefficient outside ring");
    }
    if (value.is_zero()) {
        diff_.erase(arrow);
    } else {
        diff_[arrow] = value;
    }
}

void Presentation::set_differential(std::string_view arrow, std::string_view value) {
    const int a = quiver_.arrow_index(arrow);
    if (a < 0) throw StructuralError("unknown arrow '" + std::string(arrow) + "'");
    set_differential(a, parse(value));
}

// ---------------------------------------------------------------------------
// Words and elements

Path Presentation::word(std::string_view display) const {
    std::vector<std::string> names;
    for (auto& tok : split_top(display, '*')) names.push_back(tok);
    return compose_names(names);
}

Path Presentation::compose_names(const std::vector<std::string>& display) const {
    std::optional<Path> acc;
    for (auto it = display.rbegin(); it != display.rend(); ++it) {
        Path step;
        const int a = quiver_.arrow_index(*it);
        if (a >= 0) {
            const Arrow& ar = quiver_.arrow(a);
            step = Path{ar.src, ar.tgt, {a}};
        } else if (it->size() > 1 && (*it)[0] == 'e' && quiver_.vertex_index(it->substr(1)) >= 0) {
            step = Path::lazy(quiver_.vertex_index(it->substr(1)));
        } else {
            throw StructuralError("unknown arrow or idempotent '" + *it + "'");
        }
        if (!acc) {
            acc = step;
            continue;
        }
        auto c = compose(step, *acc);
        if (!c) throw StructuralError("non-composable word");
        acc = *c;
    }
    if (!acc) throw StructuralError("empty word");
    return *acc;
}

Element Presentation::element(const Path& p) const { return element(p, ring_.one()); }

Element Presentation::element(const Path& p, const Poly& c) const {
    check_path(p);
    Element e;
    e.add(p, c);
    return e;
}

Element Presentation::unit() const {
    Element e;
    for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) {
        e.add(Path::lazy(static_cast<int>(v)), ring_.one());
    }
    return e;
}

Element Presentation::arrow_element(std::string_view name) const {
    const int a = quiver_.arrow_index(name);
    if (a < 0) throw StructuralError("unknown arrow '" + std::string(name) + "'");
    const Arrow& ar = quiver_.arrow(a);
    return element(Path{ar.src, ar.tgt, {a}});
}

Element Presentation::parse(std::string_view text) const {
    // Signed terms split at depth-0 '+' and '-'.
    std::vector<std::pair<bool, std::string>> terms;
    int depth = 0;
    std::string cur;
    bool neg = false;
    const std::string s = trim(text);
    if (s == "0") return Element{};
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0) {
            if (!trim(cur).empty()) terms.emplace_back(neg, trim(cur));
            neg = (c == '-');
            cur.clear();
            continue;
        }
        cur.push_back(c);
    }
    if (trim(cur).empty()) throw std::invalid_argument("bad element: '" + s + "'");
    terms.emplace_back(neg, trim(cur));

    Element out;
    for (const auto& [negative, body] : terms) {
        Poly coef = negative ? -ring_.one() : ring_.one();
        std::vector<std::string> word_names;
        for (const auto& f : split_top(body, '*')) {
            const bool is_word = quiver_.arrow_index(f) >= 0 ||
                                 (f.size() > 1 && f[0] == 'e' &&
                                  quiver_.vertex_index(f.substr(1)) >= 0 &&
                                  ring_.index_of(f) < 0);
            if (is_word) {
                word_names.push_back(f);
            } else {
                coef = coef * Poly::parse(ring_, f);
            }
        }
        if (word_names.empty()) {
            out.add_scaled(unit(), coef);
        } else {
            out.add(compose_names(word_names), coef);
        }
    }
    return out;
}

std::string Presentation::format(const Path& p) const {
    if (p.is_lazy()) return "e" + quiver_.vertices()[static_cast<std::size_t>(p.src)];
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += quiver_.arrow(*it).name;
    }
    return s;
}

std::string Presentation::format(const Element& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [p, c] : e.terms) {
        std::string term;
        const std::string w = format(p);
        if (c == ring_.one()) {
            term = w;
        } else if (c == -ring_.one()) {
            term = "-" + w;
        } else if (is_monomial_term(c)) {
            term = c.to_string() + "*" + w;
        } else {
            term = "(" + c.to_string() + ")*" + w;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

int Presentation::degree(const Path& p) const {
    int d = 0;
    for (int a : p.arrows) d += quiver_.arrow(a).deg;
    return d;
}

std::optional<Path> Presentation::compose(const Path& x, const Path& y) const {
    if (y.tgt != x.src) return std::nullopt;
    Path r{y.src, x.tgt, y.arrows};
    r.arrows.insert(r.arrows.end(), x.arrows.begin(), x.arrows.end());
    return r;
}

// ---------------------------------------------------------------------------
// Rewriting

std::vector<Presentation::Occurrence> Presentation::occurrences(const Path& p) const {
    std::vector<Occurrence> out;
    const std::size_t n = p.arrows.size();
    std::vector<int> key;
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::size_t len = 1; len <= max_lhs_ && pos + len <= n; ++len) {
            key.assign(p.arrows.begin() + static_cast<long>(pos),
                       p.arrows.begin() + static_cast<long>(pos + len));
            auto it = rule_index_.find(key);
            if (it != rule_index_.end()) out.push_back({pos, it->second});
        }
    }
    return out;
}

bool Presentation::is_irreducible(const Path& p) const { return occurrences(p).empty(); }

Path Presentation::splice(const Path& p, std::size_t pos, std::size_t len, const Path& w) const {
    Path r{p.src, p.tgt, {}};
    r.arrows.reserve(p.arrows.size() - len + w.arrows.size());
    r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(pos));
    r.arrows.insert(r.arrows.end(), w.arrows.begin(), w.arrows.end());
    r.arrows.insert(r.arrows.end(), p.arrows.begin() + static_cast<long>(pos + len),
                    p.arrows.end());
    return r;
}

Element Presentation::apply_rule(const Path& p, const Occurrence& occ) const {
    const RewriteRule& r = rules_[occ.rule];
    Element out;
    for (const auto& [w, c] : r.rhs.terms) out.add(splice(p, occ.pos, r.lhs.length(), w), c);
    return out;
}

Element Presentation::normal_form(const Element& e, Strategy s, std::mt19937_64* rng) const {
    Element pending = e;
    Element done;
    // Rewriting strictly decreases words, so processing the largest pending
    // word first visits every word once with its coefficients fully merged.
    while (!pending.terms.empty()) {
        auto last = std::prev(pending.terms.end());
        Path p = last->first;
        Poly c = last->second;
        pending.terms.erase(last);
        auto occ = occurrences(p);
        if (occ.empty()) {
            done.add(p, c);
            continue;
        }
        std::size_t pick = 0;
        switch (s) {
            case Strategy::leftmost:
                pick = occ.size() - 1;
                break;
            case Strategy::rightmost:
                pick = 0;
                break;
            case Strategy::random: {
                if (!rng) throw std::invalid_argument("random strategy needs a generator");
                std::uniform_int_distribution<std::size_t> dist(0, occ.size() - 1);
                pick = dist(*rng);
                break;
            }
        }
        pending.add_scaled(apply_rule(p, occ[pick]), c);
    }
    return done;
}

Element Presentation::multiply(const Element& x, const Element& y) const {
    Element raw;
    for (const auto& [px, cx] : x.terms) {
        for (const auto& [py, cy] : y.terms) {
            if (auto w = compose(px, py)) raw.add(*w, cx * cy);
        }
    }
    return normal_form(raw);
}

Element Presentation::differential_of_word(const Path& p) const {
    Element raw;
    const std::size_t n = p.arrows.size();
    // Display order reverses traversal order, so the Koszul sign of the
    // arrow at traversal position m counts the degrees after it.
    int after = 0;
    for (std::size_t k = n; k-- > 0;) {
        const int a = p.arrows[k];
        auto it = diff_.find(a);
        if (it != diff_.end()) {
            const Poly sign = (after % 2 == 0) ? ring_.one() : -ring_.one();
            for (const auto& [w, c] : it->second.terms) raw.add(splice(p, k, 1, w), c * sign);
        }
        after += quiver_.arrow(a).deg;
    }
    return normal_form(raw);
}

Element Presentation::differential(const Element& x) const {
    Element out;
    for (const auto& [p, c] : x.terms) out.add_scaled(differential_of_word(p), c);
    return out;
}

ConfluenceReport Presentation::check_confluence() const {
    ConfluenceReport rep;
    auto resolve = [&](std::size_t i, std::size_t j, const Path& word, std::size_t pos_i,
                       std::size_t pos_j) {
        ++rep.overlaps_checked;
        Element a = normal_form(apply_rule(word, {pos_i, i}));
        Element b = normal_form(apply_rule(word, {pos_j, j}));
        if (!(a == b)) {
            rep.confluent = false;
            rep.unresolved.push_back(CriticalPair{i, j, word, a, b});
        }
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& li = rules_[i].lhs.arrows;
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            const auto& lj = rules_[j].lhs.arrows;
            // Proper overlaps: a suffix of li equals a prefix of lj.
            for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
                if (!std::equal(li.end() - static_cast<long>(k), li.end(), lj.begin())) continue;
                Path w{rules_[i].lhs.src, rules_[j].lhs.tgt, li};
                w.arrows.insert(w.arrows.end(), lj.begin() + static_cast<long>(k), lj.end());
                resolve(i, j, w, 0, li.size() - k);
            }
            // Inclusions: lj strictly inside li.
            if (i != j && lj.size() < li.size()) {
                for (std::size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                    if (std::equal(lj.begin(), lj.end(), li.begin() + static_cast<long>(pos))) {
                        resolve(i, j, rules_[i].lhs, 0, pos);
                    }
                }
            }
        }
    }
    return rep;
}

std::vector<std::string> Presentation::check_differential() const {
    std::vector<std::string> problems;
    for (const auto& r : rules_) {
        Element lhs = differential_of_word(r.lhs);
        Element rhs = differential(normal_form(r.rhs));
        if (!(lhs == rhs)) {
            problems.push_back("d does not respect rule " + format(r.lhs) + ": " + format(lhs) +
                               " vs " + format(rhs));
        }
    }
    for (const auto& [a, v] : diff_) {
        Element dd = differential(normal_form(v));
        if (!dd.is_zero()) {
            problems.push_back("d^2(" + quiver_.arrow(a).name + ") = " + format(dd));
        }
    }
    return problems;
}

std::vector<Path> Presentation::graded_basis(int src, int tgt, int deg, int length_bound) const {
    std::vector<Path> out;
    bool nonpositive = true;
    for (const auto& a : quiver_.arrows()) nonpositive = nonpositive && a.deg <= 0;
    if (src == tgt && deg == 0) out.push_back(Path::lazy(src));
    Path cur{src, src, {}};
    int cur_deg = 0;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.arrows.size()) >= length_bound) return;
        for (int a : quiver_.out_arrows(cur.tgt)) {
            const Arrow& ar = quiver_.arrow(a);
            if (nonpositive && cur_deg + ar.deg < deg) continue;
            cur.arrows.push_back(a);
            // Only subwords ending at the new arrow can be new redexes.
            bool reducible = false;
            const std::size_t n = cur.arrows.size();
            for (std::size_t len = 1; len <= std::min(max_lhs_, n) && !reducible; ++len) {
                std::vector<int> key(cur.arrows.end() - static_cast<long>(len), cur.arrows.end());
                reducible = rule_index_.count(key) > 0;
            }
            if (!reducible) {
                const int saved_tgt = cur.tgt;
                cur.tgt = ar.tgt;
                cur_deg += ar.deg;
                if (cur.tgt == tgt && cur_deg == deg) out.push_back(cur);
                self(self);
                cur_deg -= ar.deg;
                cur.tgt = saved_tgt;
            }
            cur.arrows.pop_back();
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

Path Presentation::random_word(std::mt19937_64& rng, int length) const {
    const int nv = static_cast<int>(quiver_.vertex_count());
    std::uniform_int_distribution<int> pickv(0, nv - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Path p = Path::lazy(pickv(rng));
        bool stuck = false;
        for (int k = 0; k < length; ++k) {
            const auto& outs = quiver_.out_arrows(p.tgt);
            if (outs.empty()) {
                stuck = true;
                break;
            }
            std::uniform_int_distribution<std::size_t> picka(0, outs.size() - 1);
            const int a = outs[picka(rng)];
            p.arrows.push_back(a);
            p.tgt = quiver_.arrow(a).tgt;
        }
        if (!stuck) return p;
    }
    throw StructuralError("quiver has no walks of the requested length");
}

Presentation Presentation::base_change(const RingMap& m) const {
    if (!(m.source() == ring_)) throw StructuralError("base change from the wrong ring");
    Presentation out(quiver_, m.target());
    auto push = [&](const Element& e) {
        Element r;
        for (const auto& [p, c] : e.terms) r.add(p, m.apply(c));
        return r;
    };
    for (const auto& r : rules_) out.add_rule(r.lhs, push(r.rhs));
    for (const auto& [a, v] : diff_) out.set_differential(a, push(v));
    return out;
}

// ---------------------------------------------------------------------------
// Serialisation

nlohmann::json Presentation::to_json() const {
    nlohmann::json j;
    j["ring"] = {{"field", ring_.field().spec()}, {"vars", ring_.variables()}};
    j["vertices"] = quiver_.vertices();
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : quiver_.arrows()) {
        j["arrows"].push_back({{"name", a.name},
                               {"src", quiver_.vertices()[static_cast<std::size_t>(a.src)]},
                               {"tgt", quiver_.vertices()[static_cast<std::size_t>(a.tgt)]},
                               {"deg", a.deg}});
    }
    j["rules"] = nlohmann::json::array();
    for (const auto& r : rules_) {
        std::vector<std::string> lhs;
        for (auto it = r.lhs.arrows.rbegin(); it != r.lhs.arrows.rend(); ++it) {
            lhs.push_back(quiver_.arrow(*it).name);
        }
        j["rules"].push_back({{"lhs", lhs}, {"rhs", format(r.rhs)}});
    }
    j["diff"] = nlohmann::json::object();
    for (const auto& [a, v] : diff_) j["diff"][quiver_.arrow(a).name] = format(v);
    return j;
}

Presentation Presentation::from_json(const nlohmann::json& j) {
    PolyRing ring(Field::parse(j.at("ring").at("field").get<std::string>()),
                  j.at("ring").at("vars").get<std::vector<std::string>>());
    Quiver q(j.at("vertices").get<std::vector<std::string>>());
    for (const auto& a : j.at("arrows")) {
        const int s = q.vertex_index(a.at("src").get<std::string>());
        const int t = q.vertex_index(a.at("tgt").get<std::string>());
        q.add_arrow(a.at("name").get<std::string>(), s, t, a.value("deg", 0));
    }
    Presentation p(std::move(q), ring);
    const nlohmann::json rules = j.value("rules", nlohmann::json::array());
    const nlohmann::json diff = j.value("diff", nlohmann::json::object());
    for (const auto& r : rules) {
        p.add_rule(p.compose_names(r.at("lhs").get<std::vector<std::string>>()),
                   p.parse(r.at("rhs").get<std::string>()));
    }
    for (const auto& [name, v] : diff.items()) {
        p.set_differential(name, v.get<std::string>());
    }
    return p;
}

std::string Presentation::dump() const {
    std::ostringstream os;
    os << "ring " << ring_.to_string() << "\n";
    os << "vertices";
    for (const auto& v : quiver_.vertices()) os << " " << v;
    os << "\n";
    for (const auto& a : quiver_.arrows()) {
        os << "arrow " << a.name << " : " << quiver_.vertices()[static_cast<std::size_t>(a.src)]
           << " -> " << quiver_.vertices()[static_cast<std::size_t>(a.tgt)] << " deg " << a.deg
           << "\n";
    }
    for (const auto& r : rules_) os << "rule " << format(r.lhs) << " -> " << format(r.rhs) << "\n";
    for (const auto& [a, v] : diff_) os << "d " << quiver_.arrow(a).name << " = " << format(v) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Named presentations

Presentation tube_algebra(int n, const PolyRing& ring) {
    if (n < 0) throw std::invalid_argument("tube_algebra needs n >= 0");
    if (ring.nvars() != static_cast<std::size_t>(n + 1)) {
        throw StructuralError("tube_algebra(" + std::to_string(n) + ") needs " +
                              std::to_string(n + 1) + " coefficient variables");
    }
    const int m = n + 1;
    Quiver q;
    for (int i = 0; i < m; ++i) q.add_vertex(std::to_string(i));
    for (int i = 0; i < m; ++i) q.add_arrow("a" + std::to_string(i), i, (i + 1) % m);
    for (int i = 0; i < m; ++i) q.add_arrow("b" + std::to_string(i), (i + 1) % m, i);
    Presentation p(std::move(q), ring);
    for (int i = 0; i < m; ++i) {
        const std::string s = std::to_string(i);
        const Poly t = ring.variable(static_cast<std::size_t>(i));
        p.add_rule(p.word("a" + s + "*b" + s), p.element(Path::lazy((i + 1) % m), t));
        p.add_rule(p.word("b" + s + "*a" + s), p.element(Path::lazy(i), t));
    }
    return p;
}

Presentation contraction_quiver(int n, const PolyRing& ring, const std::vector<Poly>& f,
                                ArrowConvention convention) {
    if (n < 1) throw std::invalid_argument("contraction_quiver needs n >= 1");
    if (f.size() != static_cast<std::size_t>(n + 1)) {
        throw StructuralError("contraction_quiver needs n+1 polynomials");
    }
    for (const auto& fi : f) {
        if (!(fi.ring() == ring)) throw StructuralError("contraction_quiver: f outside ring");
    }
    Quiver q;
    for (int i = 1; i <= n; ++i) q.add_vertex(std::to_string(i));
    for (int i = 1; i < n; ++i) {
        const int lo = i - 1, hi = i;
        if (convention == ArrowConvention::standard) {
            q.add_arrow("a" + std::to_string(i), lo, hi);
            q.add_arrow("b" + std::to_string(i), hi, lo);
        } else {
            q.add_arrow("a" + std::to_string(i), hi, lo);
            q.add_arrow("b" + std::to_string(i), lo, hi);
        }
    }
    q.add_arrow("alpha", 0, 0, -1);
    q.add_arrow("beta", n - 1, n - 1, -1);
    Presentation p(std::move(q), ring);
    for (int i = 1; i < n; ++i) {
        const std::string s = std::to_string(i);
        const Poly& fi = f[static_cast<std::size_t>(i)];
        const int lo = i - 1, hi = i;
        const bool std_conv = convention == ArrowConvention::standard;
        p.add_rule(p.word("a" + s + "*b" + s), p.element(Path::lazy(std_conv ? hi : lo), fi));
        p.add_rule(p.word("b" + s + "*a" + s), p.element(Path::lazy(std_conv ? lo : hi), fi));
    }
    p.add_rule(p.word("alpha*alpha"), Element{});
    p.add_rule(p.word("beta*beta"), Element{});
    p.set_differential(p.quiver().arrow_index("alpha"), p.element(Path::lazy(0), f.front()));
    p.set_differential(p.quiver().arrow_index("beta"), p.element(Path::lazy(n - 1), f.back()));
    return p;
}

Presentation drinfeld_localize(const Presentation& pres, int vertex) {
    if (vertex < 0 || vertex >= static_cast<int>(pres.quiver().vertex_count())) {
        throw StructuralError("localisation vertex outside the quiver");
    }
    for (const auto& a : pres.quiver().arrows()) {
        if (a.deg != 0) throw StructuralError("drinfeld_localize expects a degree-0 presentation");
    }
    Quiver q = pres.quiver();
    const int eps = q.add_arrow("eps", vertex, vertex, -1);
    Presentation out(std::move(q), pres.ring());
    for (const auto& r : pres.rules()) out.add_rule(r.lhs, r.rhs);
    for (const auto& [a, v] : pres.differential_map()) out.set_differential(a, v);
    out.set_differential(eps, out.lazy(vertex));
    return out;
}

namespace {

Element full_cycles(const Presentation& tube, int n, char letter) {
    const int m = n + 1;
    Element sum;
    for (int i = 0; i < m; ++i) {
        Path p = Path::lazy(i);
        for (int k = 0; k < m; ++k) {
            // a-cycle: a_i, a_{i+1}, ...; b-cycle: b_{i-1}, b_{i-2}, ...
            const int idx = letter == 'a' ? (i + k) % m : ((i - 1 - k) % m + m) % m;
            const int a = tube.quiver().arrow_index(std::string(1, letter) + std::to_string(idx));
            p.arrows.push_back(a);
        }
        sum.add(p, tube.ring().one());
    }
    return tube.normal_form(sum);
}

}  // namespace

Element tube_u(const Presentation& tube, int n) { return full_cycles(tube, n, 'a'); }
Element tube_v(const Presentation& tube, int n) { return full_cycles(tube, n, 'b'); }

}  // namespace tubencr
