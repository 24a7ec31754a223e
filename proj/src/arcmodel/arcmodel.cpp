#include "tubencr/arcmodel.hpp"

#include <algorithm>
#include <set>

namespace tubencr {

namespace {

bool is_arc_end(const std::string& s) {
    return s.size() > 1 && (s.back() == '+' || s.back() == '-');
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

std::string arc_of_end(const std::string& end) {
    if (!is_arc_end(end)) throw StructuralError("not an arc-end: '" + end + "'");
    return end.substr(0, end.size() - 1);
}

std::pair<std::string, std::string> segment_ends(const std::string& segment) {
    const auto gt = segment.find('>');
    if (gt == std::string::npos || segment.find('>', gt + 1) != std::string::npos) {
        throw StructuralError("malformed boundary segment '" + segment + "'");
    }
    std::string x = segment.substr(0, gt), y = segment.substr(gt + 1);
    if (!is_arc_end(x) || !is_arc_end(y)) {
        throw StructuralError("boundary segment '" + segment + "' must join arc-ends");
    }
    return {x, y};
}

MarkedSurface::MarkedSurface(std::vector<std::vector<std::string>> boundaries,
                             std::vector<Face> faces)
    : boundaries_(std::move(boundaries)), faces_(std::move(faces)) {
    std::set<std::string> ends;
    for (const auto& cyc : boundaries_) {
        for (const auto& s : cyc) {
            if (!is_arc_end(s)) continue;
            if (!ends.insert(s).second) {
                throw StructuralError("arc-end '" + s + "' appears more than once");
            }
            const std::string arc = arc_of_end(s);
            if (std::find(arcs_.begin(), arcs_.end(), arc) == arcs_.end()) arcs_.push_back(arc);
        }
    }
    for (const auto& a : arcs_) {
        if (!ends.count(a + "+") || !ends.count(a + "-")) {
            throw StructuralError("arc '" + a + "' needs both ends on the boundary");
        }
    }
    for (const auto& cyc : boundaries_) {
        std::vector<std::size_t> pos;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (is_arc_end(cyc[k])) pos.push_back(k);
        }
        for (std::size_t k = 0; k < pos.size(); ++k) {
            const std::size_t from = pos[k];
            const std::size_t to = pos[(k + 1) % pos.size()];
            // Anything strictly between consecutive arc-ends is a stop.
            const bool stopped = (to + cyc.size() - from - 1) % cyc.size() > 0;
            const std::string name = cyc[from] + ">" + cyc[to];
            segments_.push_back(name);
            chord_[name] = !stopped;
        }
    }

    std::set<std::string> used;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const auto& c = faces_[f].cycle;
        const std::string where = "face " + std::to_string(f);
        if (c.size() < 2 || c.size() % 2 != 0) {
            throw StructuralError(where + " must alternate arcs and boundary segments");
        }
        for (std::size_t k = 0; k < c.size(); k += 2) {
            const std::string& arc = c[k];
            if (std::find(arcs_.begin(), arcs_.end(), arc) == arcs_.end()) {
                throw StructuralError(where + " names unknown arc '" + arc + "'");
            }
            const std::string& next = c[k + 1];
            const std::string& prev = c[(k + c.size() - 1) % c.size()];
            if (!chord_.count(next) || !chord_.count(prev)) {
                throw StructuralError(where + " uses a segment not on the boundary");
            }
            if (arc_of_end(segment_ends(next).first) != arc ||
                arc_of_end(segment_ends(prev).second) != arc) {
                throw StructuralError(where + " is not a closed cycle at arc '" + arc + "'");
            }
        }
        for (std::size_t k = 1; k < c.size(); k += 2) {
            if (!used.insert(c[k]).second) {
                throw StructuralError("segment '" + c[k] + "' bounds two faces");
            }
        }
    }
}

bool MarkedSurface::is_chord(const std::string& segment) const {
    auto it = chord_.find(segment);
    return it != chord_.end() && it->second;
}

int MarkedSurface::euler_characteristic() const {
    const int v = static_cast<int>(2 * arcs_.size());
    const int e = static_cast<int>(arcs_.size() + segments_.size());
    const int f = static_cast<int>(faces_.size());
    return v - e + f;
}

int MarkedSurface::total_marks() const {
    int n = 0;
    for (const auto& f : faces_) n += f.mark.has_value();
    return n;
}

nlohmann::json MarkedSurface::to_json() const {
    nlohmann::json j;
    j["boundaries"] = boundaries_;
    j["faces"] = nlohmann::json::array();
    for (const auto& f : faces_) {
        nlohmann::json jf{{"cycle", f.cycle}};
        jf["mark"] = f.mark ? nlohmann::json(*f.mark) : nlohmann::json(nullptr);
        j["faces"].push_back(jf);
    }
    return j;
}

MarkedSurface MarkedSurface::from_json(const nlohmann::json& j) {
    std::vector<Face> faces;
    for (const auto& jf : j.at("faces")) {
        Face f{jf.at("cycle").get<std::vector<std::string>>(), std::nullopt};
        if (jf.contains("mark") && !jf["mark"].is_null()) f.mark = jf["mark"].get<int>();
        faces.push_back(std::move(f));
    }
    return MarkedSurface(j.at("boundaries").get<std::vector<std::vector<std::string>>>(),
                         std::move(faces));
}

MarkedSurface annulus(int n) {
    if (n < 0) throw std::invalid_argument("annulus needs n >= 0");
    const int m = n + 1;
    std::vector<std::string> outer, inner;
    for (int i = 0; i < m; ++i) outer.push_back("L" + idx(i) + "+");
    for (int i = n; i >= 0; --i) inner.push_back("L" + idx(i) + "-");
    std::vector<Face> faces;
    for (int i = 0; i < m; ++i) {
        const std::string a = "L" + idx(i), b = "L" + idx((i + 1) % m);
        faces.push_back(Face{{a, a + "+>" + b + "+", b, b + "->" + a + "-"}, i});
    }
    return MarkedSurface({outer, inner}, std::move(faces));
}

MarkedSurface disc(int n) {
    if (n < 1) throw std::invalid_argument("disc needs n >= 1");
    std::vector<std::string> cyc;
    for (int i = 1; i <= n; ++i) cyc.push_back("L" + idx(i) + "+");
    for (int i = n; i >= 1; --i) cyc.push_back("L" + idx(i) + "-");
    std::vector<Face> faces;
    faces.push_back(Face{{"L1", "L1->L1+"}, 0});
    for (int i = 1; i < n; ++i) {
        const std::string a = "L" + idx(i), b = "L" + idx(i + 1);
        faces.push_back(Face{{a, a + "+>" + b + "+", b, b + "->" + a + "-"}, i});
    }
    const std::string ln = "L" + idx(n);
    faces.push_back(Face{{ln, ln + "+>" + ln + "-"}, n});
    return MarkedSurface({cyc}, std::move(faces));
}

GeneratedPresentation generate_presentation(const MarkedSurface& s, const PolyRing& ring) {
    std::map<std::string, int> chord_degree;
    for (std::size_t f = 0; f < s.faces().size(); ++f) {
        const auto& face = s.faces()[f];
        const std::string where = "face " + std::to_string(f);
        if (face.cycle.size() > 4) {
            throw StructuralError(where + " has " + std::to_string(face.cycle.size()) +
                                  " sides; only bigons and quadrilaterals are supported");
        }
        if (face.cycle.size() == 2 && !face.mark) {
            throw StructuralError(where + " is an unmarked bigon");
        }
        if (face.mark && (*face.mark < 0 || static_cast<std::size_t>(*face.mark) >= ring.nvars())) {
            throw StructuralError(where + " carries a mark outside the coefficient ring");
        }
        const int deg = face.cycle.size() == 2 ? -1 : 0;
        for (std::size_t k = 1; k < face.cycle.size(); k += 2) {
            const std::string& seg = face.cycle[k];
            if (!s.is_chord(seg)) {
                throw StructuralError(where + " uses segment '" + seg + "' which crosses a stop");
            }
            chord_degree[seg] = deg;
        }
    }

    Quiver q(s.arcs());
    for (const auto& seg : s.segments()) {
        if (!s.is_chord(seg)) continue;
        auto [x, y] = segment_ends(seg);
        auto it = chord_degree.find(seg);
        q.add_arrow(seg, q.vertex_index(arc_of_end(x)), q.vertex_index(arc_of_end(y)),
                    it == chord_degree.end() ? 0 : it->second);
    }

    GeneratedPresentation out{Presentation(std::move(q), ring), {}};
    Presentation& p = out.presentation;
    std::vector<std::string> diff_notes;
    for (std::size_t f = 0; f < s.faces().size(); ++f) {
        const auto& face = s.faces()[f];
        const Poly coef = face.mark ? ring.variable(static_cast<std::size_t>(*face.mark))
                                    : ring.one();
        const std::string tag = "face " + std::to_string(f) +
                                (face.cycle.size() == 2 ? " bigon" : " quadrilateral") +
                                (face.mark ? " mark " + std::to_string(*face.mark) : "");
        if (face.cycle.size() == 2) {
            const Path g = p.word(face.cycle[1]);
            p.add_rule(p.compose(g, g).value(), Element{});
            out.provenance.push_back(tag);
            p.set_differential(g.arrows.front(), p.element(Path::lazy(g.src), coef));
            diff_notes.push_back(tag);
        } else {
            const Path x = p.word(face.cycle[1]);
            const Path y = p.word(face.cycle[3]);
            p.add_rule(p.compose(x, y).value(), p.element(Path::lazy(x.tgt), coef));
            out.provenance.push_back(tag);
            p.add_rule(p.compose(y, x).value(), p.element(Path::lazy(y.tgt), coef));
            out.provenance.push_back(tag);
        }
    }
    out.provenance.insert(out.provenance.end(), diff_notes.begin(), diff_notes.end());
    return out;
}

std::map<std::string, std::string> strip_arc_prefix(const Presentation& p) {
    std::map<std::string, std::string> m;
    for (const auto& v : p.quiver().vertices()) {
        const bool numeric = v.size() > 1 && v[0] == 'L' &&
                             std::all_of(v.begin() + 1, v.end(), [](char c) { return std::isdigit(c); });
        m[v] = numeric ? v.substr(1) : v;
    }
    return m;
}

std::optional<std::map<std::string, std::string>> find_isomorphism(
    const Presentation& a, const Presentation& b,
    const std::map<std::string, std::string>& vertex_map) {
    const Quiver& qa = a.quiver();
    const Quiver& qb = b.quiver();
    if (!(a.ring() == b.ring())) return std::nullopt;
    if (qa.vertex_count() != qb.vertex_count() || qa.arrow_count() != qb.arrow_count()) {
        return std::nullopt;
    }
    if (a.rules().size() != b.rules().size()) return std::nullopt;
    if (a.differential_map().size() != b.differential_map().size()) return std::nullopt;

    std::vector<int> vmap(qa.vertex_count(), -1);
    std::set<int> hit;
    for (std::size_t v = 0; v < qa.vertex_count(); ++v) {
        auto it = vertex_map.find(qa.vertices()[v]);
        if (it == vertex_map.end()) return std::nullopt;
        const int w = qb.vertex_index(it->second);
        if (w < 0 || !hit.insert(w).second) return std::nullopt;
        vmap[v] = w;
    }

    std::map<std::vector<int>, const Element*> b_rules;
    for (const auto& r : b.rules()) b_rules[r.lhs.arrows] = &r.rhs;

    std::vector<int> amap(qa.arrow_count(), -1);
    std::vector<bool> taken(qb.arrow_count(), false);

    auto map_path = [&](const Path& p) {
        Path r{vmap[static_cast<std::size_t>(p.src)], vmap[static_cast<std::size_t>(p.tgt)], {}};
        for (int x : p.arrows) r.arrows.push_back(amap[static_cast<std::size_t>(x)]);
        return r;
    };
    auto map_elem = [&](const Element& e) {
        Element r;
        for (const auto& [p, c] : e.terms) r.add(map_path(p), c);
        return r;
    };
    auto consistent = [&]() {
        for (const auto& r : a.rules()) {
            auto it = b_rules.find(map_path(r.lhs).arrows);
            if (it == b_rules.end() || !(map_elem(r.rhs) == *it->second)) return false;
        }
        for (std::size_t x = 0; x < qa.arrow_count(); ++x) {
            auto da = a.differential_map().find(static_cast<int>(x));
            auto db = b.differential_map().find(amap[x]);
            const Element ea = da == a.differential_map().end() ? Element{} : map_elem(da->second);
            const Element eb = db == b.differential_map().end() ? Element{} : db->second;
            if (!(ea == eb)) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t x) -> bool {
        if (x == qa.arrow_count()) return consistent();
        const Arrow& ar = qa.arrows()[x];
        for (std::size_t y = 0; y < qb.arrow_count(); ++y) {
            const Arrow& br = qb.arrows()[y];
            if (taken[y] || br.deg != ar.deg || br.src != vmap[static_cast<std::size_t>(ar.src)] ||
                br.tgt != vmap[static_cast<std::size_t>(ar.tgt)]) {
                continue;
            }
            taken[y] = true;
            amap[x] = static_cast<int>(y);
            if (self(self, x + 1)) return true;
            taken[y] = false;
            amap[x] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;

    std::map<std::string, std::string> names;
    for (std::size_t x = 0; x < qa.arrow_count(); ++x) {
        names[qa.arrows()[x].name] = qb.arrows()[static_cast<std::size_t>(amap[x])].name;
    }
    return names;
}

}  // namespace tubencr
