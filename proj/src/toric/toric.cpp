#include "tubencr/toric.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace tubencr {

namespace {

void check_n(int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
}

WeightMonomial one_monomial(int n) {
    return WeightMonomial{Exponent(static_cast<std::size_t>(n + 1), 0),
                          Exponent(static_cast<std::size_t>(n + 1), 0)};
}

void sort_monomials(std::vector<WeightMonomial>& v) {
    std::sort(v.begin(), v.end(), [](const WeightMonomial& a, const WeightMonomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    });
}

std::string t_product(int from, int to) {
    std::string s;
    for (int k = from; k <= to; ++k) s += (s.empty() ? "t" : "*t") + std::to_string(k);
    return s.empty() ? "1" : s;
}

}  // namespace

bool WeightMonomial::reduced() const {
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] > 0 && d[k] > 0) return false;
    }
    return true;
}

std::string WeightMonomial::to_string() const {
    std::string s;
    auto put = [&](char v, const Exponent& e) {
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += v + std::to_string(k);
            if (e[k] > 1) s += "^" + std::to_string(e[k]);
        }
    };
    put('x', c);
    put('y', d);
    return s.empty() ? "1" : s;
}

WeightMonomial x_monomial(int n, int k) {
    WeightMonomial m = one_monomial(n);
    m.c.at(static_cast<std::size_t>(k)) = 1;
    return m;
}

WeightMonomial y_monomial(int n, int k) {
    WeightMonomial m = one_monomial(n);
    m.d.at(static_cast<std::size_t>(k)) = 1;
    return m;
}

WeightMonomial operator*(const WeightMonomial& a, const WeightMonomial& b) {
    if (a.c.size() != b.c.size()) throw StructuralError("monomials from different Cox rings");
    WeightMonomial r = a;
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        r.c[k] += b.c[k];
        r.d[k] += b.d[k];
    }
    return r;
}

TorusWeight weight(const WeightMonomial& m, int n) {
    check_n(n);
    if (m.c.size() != static_cast<std::size_t>(n + 1) ||
        m.d.size() != static_cast<std::size_t>(n + 1)) {
        throw std::invalid_argument("exponent vectors must have length n+1");
    }
    TorusWeight w(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
        const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(i);
        w[a] = m.c[a] - m.c[b] - m.d[a] + m.d[b];
    }
    return w;
}

TorusWeight character(int n, int i) {
    check_n(n);
    TorusWeight w(static_cast<std::size_t>(n), 0);
    if (i < 0 || i > n) throw std::invalid_argument("character index out of range");
    if (i > 0) w[static_cast<std::size_t>(i - 1)] = 1;
    return w;
}

PolyRing cox_ring(const Field& field, int n) {
    check_n(n);
    std::vector<std::string> vars;
    for (int k = 0; k <= n; ++k) vars.push_back("x" + std::to_string(k));
    for (int k = 0; k <= n; ++k) vars.push_back("y" + std::to_string(k));
    return PolyRing(field, std::move(vars));
}

Poly to_poly(const PolyRing& cox, const WeightMonomial& m) {
    Exponent e = m.c;
    e.insert(e.end(), m.d.begin(), m.d.end());
    if (e.size() != cox.nvars()) throw StructuralError("monomial does not fit the Cox ring");
    return cox.monomial(e, cox.scalar(1));
}

RingMap t_to_cox(const PolyRing& coefficients, const PolyRing& cox) {
    const std::size_t m = coefficients.nvars();
    if (cox.nvars() != 2 * m) throw StructuralError("Cox ring size mismatch");
    std::vector<Poly> images;
    for (std::size_t k = 0; k < m; ++k) images.push_back(cox.variable(k) * cox.variable(m + k));
    return RingMap(coefficients, cox, std::move(images));
}

std::vector<WeightMonomial> reduced_weight_monomials(int n, const TorusWeight& w, int bound) {
    check_n(n);
    if (w.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("weight has wrong length");
    std::vector<WeightMonomial> out;
    // z_k = c_k - d_k satisfies z_{m} = z_{m-1} - w_m, so z_0 determines everything.
    for (int z0 = -bound; z0 <= bound; ++z0) {
        WeightMonomial r = one_monomial(n);
        int z = z0;
        int deg = 0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) z -= w[static_cast<std::size_t>(k - 1)];
            (z >= 0 ? r.c : r.d)[static_cast<std::size_t>(k)] = std::abs(z);
            deg += std::abs(z);
        }
        if (deg <= bound) out.push_back(std::move(r));
    }
    sort_monomials(out);
    return out;
}

std::vector<WeightMonomial> weight_monomials(int n, const TorusWeight& w, int bound) {
    std::vector<WeightMonomial> out;
    for (const auto& r : reduced_weight_monomials(n, w, bound)) {
        const int spare = (bound - r.degree()) / 2;
        WeightMonomial cur = r;
        std::function<void(int, int)> grow = [&](int k, int left) {
            if (k > n) {
                out.push_back(cur);
                return;
            }
            const auto ks = static_cast<std::size_t>(k);
            for (int s = 0; s <= left; ++s) {
                cur.c[ks] = r.c[ks] + s;
                cur.d[ks] = r.d[ks] + s;
                grow(k + 1, left - s);
            }
            cur.c[ks] = r.c[ks];
            cur.d[ks] = r.d[ks];
        };
        grow(0, spare);
    }
    sort_monomials(out);
    return out;
}

std::pair<Exponent, WeightMonomial> split_t(const WeightMonomial& m) {
    Exponent s(m.c.size(), 0);
    WeightMonomial r = m;
    for (std::size_t k = 0; k < m.c.size(); ++k) {
        s[k] = std::min(m.c[k], m.d[k]);
        r.c[k] -= s[k];
        r.d[k] -= s[k];
    }
    return {s, r};
}

WeightMonomial sigma(int n, int i) {
    WeightMonomial m = one_monomial(n);
    for (int k = 0; k < i; ++k) m.c.at(static_cast<std::size_t>(k)) = 1;
    return m;
}

WeightMonomial tau(int n, int i) {
    WeightMonomial m = one_monomial(n);
    for (int k = i; k <= n; ++k) m.d.at(static_cast<std::size_t>(k)) = 1;
    return m;
}

// ---------------------------------------------------------------------------
// Sections

bool check_certificate(int n, int i, const SectionCertificate& c) {
    WeightMonomial m = c.via_sigma ? sigma(n, i) : tau(n, i);
    WeightMonomial uv = one_monomial(n);
    for (int k = 0; k <= n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        (c.via_sigma ? uv.c : uv.d)[ks] = c.uv_power;
        m.c[ks] += c.t_power[ks];
        m.d[ks] += c.t_power[ks];
    }
    return m * uv == c.section;
}

SectionBasis section_basis(int i, int n, int degree_bound) {
    if (i < 1 || i > n) throw std::invalid_argument("section_basis needs 1 <= i <= n");
    SectionBasis sb;
    sb.i = i;
    sb.n = n;
    sb.bound = degree_bound;
    sb.target = character(n, i);
    if (degree_bound < std::max(i, n - i + 1)) {
        sb.status = SectionStatus::inconclusive_at_bound;
    }
    sb.monomials = weight_monomials(n, sb.target, degree_bound);
    for (const auto& m : sb.monomials) {
        auto [s, r] = split_t(m);
        const int z0 = r.c[0] - r.d[0];
        SectionCertificate cert{m, z0 >= 1, s, z0 >= 1 ? z0 - 1 : -z0};
        if (!check_certificate(n, i, cert)) {
            throw std::logic_error("section certificate failed for " + m.to_string());
        }
        sb.certificates.push_back(std::move(cert));
    }
    sb.ideal = {"u", t_product(i, n)};
    sb.relations = {"v*sigma" + std::to_string(i) + " = " + t_product(0, i - 1) + "*tau" +
                        std::to_string(i),
                    "u*tau" + std::to_string(i) + " = " + t_product(i, n) + "*sigma" +
                        std::to_string(i)};
    return sb;
}

nlohmann::json SectionBasis::to_json() const {
    nlohmann::json j;
    j["i"] = i;
    j["n"] = n;
    j["bound"] = bound;
    j["status"] = status == SectionStatus::complete ? "complete" : "inconclusive_at_bound";
    j["target_weight"] = target;
    j["generators"] = {sigma(n, i).to_string(), tau(n, i).to_string()};
    j["ideal"] = {ideal.first, ideal.second};
    j["relations"] = relations;
    j["sections"] = nlohmann::json::array();
    for (const auto& c : certificates) {
        std::string inv;
        for (std::size_t k = 0; k < c.t_power.size(); ++k) {
            if (c.t_power[k] == 0) continue;
            inv += (inv.empty() ? "t" : "*t") + std::to_string(k);
            if (c.t_power[k] > 1) inv += "^" + std::to_string(c.t_power[k]);
        }
        if (c.uv_power > 0) {
            inv += std::string(inv.empty() ? "" : "*") + (c.via_sigma ? "u" : "v");
            if (c.uv_power > 1) inv += "^" + std::to_string(c.uv_power);
        }
        j["sections"].push_back({{"monomial", c.section.to_string()},
                                 {"invariant", inv.empty() ? "1" : inv},
                                 {"generator", c.via_sigma ? "sigma" : "tau"}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// Wedge

std::vector<WeightMonomial> wedge_components(int n) {
    if (n < 2) throw std::invalid_argument("wedge needs n >= 2");
    std::vector<WeightMonomial> out;
    for (int k = 0; k < n; ++k) {
        WeightMonomial m = one_monomial(n);
        for (int l = 1; l <= k; ++l) m = m * sigma(n, l);
        for (int l = k + 2; l <= n; ++l) m = m * tau(n, l);
        out.push_back(m);
    }
    return out;
}

bool vanishes(const WeightMonomial& m, int n, unsigned mask) {
    for (int k = 0; k <= n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (m.c[ks] > 0 && (mask >> k & 1u)) return true;
        if (m.d[ks] > 0 && (mask >> (n + 1 + k) & 1u)) return true;
    }
    return false;
}

std::optional<std::pair<int, int>> instability_witness(int n, unsigned mask) {
    for (int j = 0; j <= n; ++j) {
        if (!(mask >> j & 1u)) continue;
        for (int k = j + 1; k <= n; ++k) {
            if (mask >> (n + 1 + k) & 1u) return std::make_pair(j, k);
        }
    }
    return std::nullopt;
}

WedgeReport wedge_nonvanishing(int n) {
    if (n < 2 || n > 14) throw std::invalid_argument("wedge_nonvanishing needs 2 <= n <= 14");
    WedgeReport rep;
    rep.n = n;
    rep.holds = true;
    const auto comps = wedge_components(n);
    const unsigned total = 1u << (2 * (n + 1));
    for (unsigned mask = 0; mask < total; ++mask) {
        ++rep.patterns;
        bool all = true;
        for (const auto& c : comps) {
            if (!vanishes(c, n, mask)) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        ++rep.degenerate_patterns;
        if (!instability_witness(n, mask)) {
            rep.holds = false;
            if (!rep.counterexample) rep.counterexample = mask;
        }
    }
    return rep;
}

nlohmann::json WedgeReport::to_json() const {
    nlohmann::json j{{"n", n},
                     {"patterns", patterns},
                     {"degenerate_patterns", degenerate_patterns},
                     {"holds", holds}};
    if (counterexample) {
        std::vector<std::string> zero;
        for (int k = 0; k <= n; ++k) {
            if (*counterexample >> k & 1u) zero.push_back("x" + std::to_string(k));
        }
        for (int k = 0; k <= n; ++k) {
            if (*counterexample >> (n + 1 + k) & 1u) zero.push_back("y" + std::to_string(k));
        }
        j["counterexample"] = zero;
    }
    return j;
}

// ---------------------------------------------------------------------------
// End algebra

int default_toric_bound(int n) { return 2 * (n + 1) + 4; }

WeightMonomial path_image(const Presentation& tube, const Path& p, int n) {
    WeightMonomial m = one_monomial(n);
    for (int a : p.arrows) {
        const std::string& name = tube.quiver().arrow(a).name;
        const int k = std::stoi(name.substr(1));
        if (name[0] == 'a') {
            ++m.c.at(static_cast<std::size_t>(k));
        } else if (name[0] == 'b') {
            ++m.d.at(static_cast<std::size_t>(k));
        } else {
            throw StructuralError("path_image: unexpected arrow " + name);
        }
    }
    return m;
}

namespace {

Poly element_image(const Presentation& tube, const Element& e, int n, const PolyRing& cox,
                   const RingMap& tmap) {
    Poly out = cox.zero();
    for (const auto& [p, c] : e.terms) out += tmap.apply(c) * to_poly(cox, path_image(tube, p, n));
    return out;
}

// The unique tube path from vertex i whose image is the reduced monomial r.
std::optional<Path> monomial_path(const Presentation& tube, const WeightMonomial& r, int i, int n) {
    const int m = n + 1;
    WeightMonomial left = r;
    Path p = Path::lazy(i);
    int at = i;
    const bool xs = std::any_of(r.c.begin(), r.c.end(), [](int e) { return e > 0; });
    for (int step = 0, len = r.degree(); step < len; ++step) {
        if (xs) {
            int& e = left.c[static_cast<std::size_t>(at)];
            if (e == 0) return std::nullopt;
            --e;
            p.arrows.push_back(tube.quiver().arrow_index("a" + std::to_string(at)));
            at = (at + 1) % m;
        } else {
            const int k = (at + m - 1) % m;
            int& e = left.d[static_cast<std::size_t>(k)];
            if (e == 0) return std::nullopt;
            --e;
            p.arrows.push_back(tube.quiver().arrow_index("b" + std::to_string(k)));
            at = k;
        }
    }
    p.tgt = at;
    return p;
}

}  // namespace

EndReport end_algebra(int n, int length_bound, const Field& field) {
    check_n(n);
    if (length_bound < 0) throw std::invalid_argument("length bound must be nonnegative");
    EndReport rep;
    rep.n = n;
    rep.bound = length_bound;
    const PolyRing r = PolyRing::tube_coefficients(field, n);
    const PolyRing cox = cox_ring(field, n);
    const RingMap tmap = t_to_cox(r, cox);
    const Presentation tube = tube_algebra(n, r);
    for (int k = 0; k <= n; ++k) {
        rep.generator_images["a" + std::to_string(k)] = "x" + std::to_string(k);
        rep.generator_images["b" + std::to_string(k)] = "y" + std::to_string(k);
    }

    std::map<std::pair<int, int>, std::vector<Path>> basis;
    rep.bijective = true;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            auto paths = tube.graded_basis(i, j, 0, length_bound);
            std::vector<WeightMonomial> images;
            for (const auto& p : paths) images.push_back(path_image(tube, p, n));
            sort_monomials(images);
            TorusWeight w = character(n, j);
            const TorusWeight wi = character(n, i);
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= wi[k];
            const auto toric = reduced_weight_monomials(n, w, length_bound);
            auto& rk = rep.ranks[{i, j}];
            rk.assign(static_cast<std::size_t>(length_bound + 1), 0);
            for (const auto& m : toric) ++rk[static_cast<std::size_t>(m.degree())];
            if (images != toric && rep.bijective) {
                rep.bijective = false;
                rep.counterexample = "hom(M" + std::to_string(i) + ",M" + std::to_string(j) +
                                     "): " + std::to_string(images.size()) + " paths vs " +
                                     std::to_string(toric.size()) + " monomials";
            }
            rep.basis_size += paths.size();
            basis[{i, j}] = std::move(paths);
        }
    }

    rep.multiplicative = true;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= n; ++k) {
                for (const auto& p : basis[{i, j}]) {
                    const Poly ip = to_poly(cox, path_image(tube, p, n));
                    for (const auto& q : basis[{j, k}]) {
                        ++rep.pairs_checked;
                        Element prod = tube.normal_form(*tube.compose(q, p));
                        Poly lhs = element_image(tube, prod, n, cox, tmap);
                        Poly rhs = to_poly(cox, path_image(tube, q, n)) * ip;
                        if (!(lhs == rhs) && rep.multiplicative) {
                            rep.multiplicative = false;
                            rep.counterexample = tube.format(q) + " * " + tube.format(p) + ": " +
                                                 lhs.to_string() + " != " + rhs.to_string();
                        }
                    }
                }
            }
        }
    }
    return rep;
}

nlohmann::json EndReport::to_json() const {
    nlohmann::json j{{"n", n},
                     {"bound", bound},
                     {"bijective", bijective},
                     {"multiplicative", multiplicative},
                     {"basis_size", basis_size},
                     {"pairs_checked", pairs_checked},
                     {"generator_images", generator_images},
                     {"passed", passed()}};
    nlohmann::json rk = nlohmann::json::array();
    for (const auto& [ij, v] : ranks) {
        rk.push_back({{"src", ij.first}, {"tgt", ij.second}, {"ranks_by_length", v}});
    }
    j["ranks"] = rk;
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
}

BaseChangeReport base_change_end(int n, const std::vector<Poly>& f, int length_bound) {
    check_n(n);
    if (f.size() != static_cast<std::size_t>(n + 1)) {
        throw std::invalid_argument("base change needs n+1 polynomials");
    }
    const PolyRing s = f.front().ring();
    const PolyRing r = PolyRing::tube_coefficients(s.field(), n);
    const RingMap fmap(r, s, f);
    const Presentation tube = tube_algebra(n, r);
    const Presentation bc = tube.base_change(fmap);
    BaseChangeReport rep;
    rep.n = n;
    rep.bound = length_bound;
    rep.ok = true;
    for (const auto& rule : bc.rules()) {
        rep.relations.push_back(bc.format(rule.lhs) + " = " + bc.format(rule.rhs));
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const auto ps = tube.graded_basis(i, j, 0, length_bound);
            for (int k = 0; k <= n; ++k) {
                const auto qs = tube.graded_basis(j, k, 0, length_bound);
                for (const auto& p : ps) {
                    for (const auto& q : qs) {
                        ++rep.pairs_checked;
                        auto [t, red] = split_t(path_image(tube, q, n) * path_image(tube, p, n));
                        auto path = monomial_path(tube, red, i, n);
                        Element expected;
                        if (!path || path->tgt != k) {
                            rep.ok = false;
                            if (!rep.counterexample) {
                                rep.counterexample = "no path for monomial " + red.to_string();
                            }
                            continue;
                        }
                        expected.add(*path, fmap.apply(r.monomial(t, r.scalar(1))));
                        Element got = bc.normal_form(*bc.compose(q, p));
                        if (!(got == expected) && rep.ok) {
                            rep.ok = false;
                            rep.counterexample = bc.format(q) + " * " + bc.format(p) + " = " +
                                                 bc.format(got) + ", toric side gives " +
                                                 bc.format(expected);
                        }
                    }
                }
            }
        }
    }
    return rep;
}

nlohmann::json BaseChangeReport::to_json() const {
    nlohmann::json j{{"n", n},
                     {"bound", bound},
                     {"ok", ok},
                     {"pairs_checked", pairs_checked},
                     {"relations", relations}};
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
}

}  // namespace tubencr
