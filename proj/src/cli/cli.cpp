#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "tubencr/arcmodel.hpp"
#include "tubencr/cli.hpp"
#include "tubencr/cohom.hpp"
#include "tubencr/toric.hpp"
#include "tubencr/twcat.hpp"

namespace tubencr {

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["field"] = field;
    j["n"] = n;
    j["f"] = f;
    j["vars"] = vars;
    j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
    j["len"] = len ? nlohmann::json(*len) : nlohmann::json(nullptr);
    j["m"] = m;
    j["vertex"] = vertex;
    j["convention"] = convention;
    j["format"] = format == OutputFormat::json ? "json" : "text";
    j["output"] = output;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.field = j.at("field").get<std::string>();
    c.n = j.at("n").get<int>();
    c.f = j.at("f").get<std::vector<std::string>>();
    c.vars = j.at("vars").get<std::vector<std::string>>();
    if (!j.at("bound").is_null()) c.bound = j.at("bound").get<int>();
    if (!j.at("len").is_null()) c.len = j.at("len").get<int>();
    c.m = j.at("m").get<int>();
    c.vertex = j.at("vertex").get<int>();
    c.convention = j.at("convention").get<std::string>();
    c.format = j.at("format").get<std::string>() == "text" ? OutputFormat::text : OutputFormat::json;
    c.output = j.at("output").get<std::string>();
    return c;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Result {
    Verdict verdict = Verdict::pass;
    nlohmann::json report;
    std::vector<std::string> summary;
};

Field field_of(const RunConfig& c) {
    try {
        return Field::parse(c.field);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --field: ") + e.what());
    }
}

std::vector<std::string> ring_variables(const RunConfig& c) {
    if (!c.vars.empty()) return c.vars;
    std::vector<std::string> out;
    static const std::regex ident("[A-Za-z][A-Za-z0-9_]*");
    for (const auto& text : c.f) {
        for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
            if (std::find(out.begin(), out.end(), it->str()) == out.end()) out.push_back(it->str());
        }
    }
    if (out.empty()) out.push_back("x");
    return out;
}

std::vector<Poly> parse_f(const RunConfig& c, const PolyRing& ring, std::size_t expected) {
    if (c.f.size() != expected)
        throw UsageError("--f needs " + std::to_string(expected) + " polynomials, got " +
                         std::to_string(c.f.size()));
    std::vector<Poly> out;
    for (const auto& text : c.f) {
        try {
            out.push_back(Poly::parse(ring, text));
        } catch (const std::exception& e) {
            throw UsageError("bad polynomial '" + text + "': " + e.what());
        }
    }
    return out;
}

void need_n(const RunConfig& c, int lo, int hi = 64) {
    if (c.n < lo || c.n > hi)
        throw UsageError("--n must be in " + std::to_string(lo) + ".." + std::to_string(hi));
}

ArrowConvention convention_of(const RunConfig& c) {
    return c.convention == "reversed" ? ArrowConvention::reversed : ArrowConvention::standard;
}

Verdict of_status(CohomStatus s) {
    return s == CohomStatus::stable ? Verdict::pass : Verdict::inconclusive;
}

// Base presentation for the contraction commands: f over its own ring, or
// t0..tn when no --f is given.
Presentation contraction_from(const RunConfig& c) {
    const Field field = field_of(c);
    if (c.f.empty()) {
        const PolyRing r = PolyRing::tube_coefficients(field, c.n);
        std::vector<Poly> t;
        for (std::size_t i = 0; i < r.nvars(); ++i) t.push_back(r.variable(i));
        return contraction_quiver(c.n, r, t, convention_of(c));
    }
    const PolyRing s(field, ring_variables(c));
    return contraction_quiver(c.n, s, parse_f(c, s, static_cast<std::size_t>(c.n + 1)), convention_of(c));
}

// --- algebra ------------------------------------------------------------

Result algebra_tube(const RunConfig& c) {
    need_n(c, 0);
    const auto p = tube_algebra(c.n, PolyRing::tube_coefficients(field_of(c), c.n));
    Result r;
    const auto conf = p.check_confluence();
    Poly prod = p.ring().one();
    for (std::size_t i = 0; i < p.ring().nvars(); ++i) prod = prod * p.ring().variable(i);
    Element expect;
    expect.add_scaled(p.unit(), prod);
    const Element u = tube_u(p, c.n), v = tube_v(p, c.n);
    const bool center = p.multiply(u, v) == expect && p.multiply(v, u) == expect;
    const int bound = c.bound.value_or(2 * (c.n + 1) + 2);
    nlohmann::json ranks = nlohmann::json::array();
    for (int i = 0; i <= c.n; ++i)
        for (int j = 0; j <= c.n; ++j)
            ranks.push_back({{"source", i}, {"target", j}, {"rank", p.graded_basis(i, j, 0, bound).size()}});
    r.report = {{"presentation", p.to_json()},
                {"confluent", conf.confluent},
                {"overlaps_checked", conf.overlaps_checked},
                {"center_relation", center},
                {"u", p.format(u)},
                {"v", p.format(v)},
                {"length_bound", bound},
                {"graded_ranks", ranks}};
    r.verdict = conf.confluent && center ? Verdict::pass : Verdict::fail;
    r.summary = {"confluent: " + std::string(conf.confluent ? "yes" : "no"),
                 "uv = vu = t0...tn: " + std::string(center ? "yes" : "no")};
    return r;
}

Result algebra_contraction(const RunConfig& c) {
    need_n(c, 1);
    const auto p = contraction_from(c);
    Result r;
    const auto conf = p.check_confluence();
    const auto dbad = p.check_differential();
    r.report = {{"presentation", p.to_json()},
                {"confluent", conf.confluent},
                {"differential_errors", dbad}};
    r.verdict = conf.confluent && dbad.empty() ? Verdict::pass : Verdict::fail;
    r.summary = {p.dump()};
    return r;
}

Result algebra_localize(const RunConfig& c) {
    need_n(c, 0);
    const Field field = field_of(c);
    const PolyRing t = PolyRing::tube_coefficients(field, c.n);
    Presentation base = tube_algebra(c.n, t);
    if (!c.f.empty()) {
        const PolyRing s(field, ring_variables(c));
        base = base.base_change(RingMap(t, s, parse_f(c, s, static_cast<std::size_t>(c.n + 1))));
    }
    if (c.vertex < 0 || c.vertex > c.n) throw UsageError("--vertex out of range");
    const auto p = drinfeld_localize(base, c.vertex);
    const auto conf = p.check_confluence();
    const auto dbad = p.check_differential();
    Result r;
    r.report = {{"presentation", p.to_json()},
                {"confluent", conf.confluent},
                {"differential_errors", dbad}};
    r.verdict = conf.confluent && dbad.empty() ? Verdict::pass : Verdict::fail;
    r.summary = {p.dump()};
    return r;
}

// --- arc ----------------------------------------------------------------

Result arc_surface(const RunConfig& c, bool is_annulus) {
    need_n(c, is_annulus ? 0 : 1);
    const PolyRing t = PolyRing::tube_coefficients(field_of(c), c.n);
    const MarkedSurface s = is_annulus ? annulus(c.n) : disc(c.n);
    const auto gen = generate_presentation(s, t);
    Presentation target = tube_algebra(c.n, t);
    if (!is_annulus) {
        std::vector<Poly> tv;
        for (std::size_t i = 0; i < t.nvars(); ++i) tv.push_back(t.variable(i));
        target = contraction_quiver(c.n, t, tv);
    }
    const auto iso = find_isomorphism(gen.presentation, target, strip_arc_prefix(gen.presentation));
    Result r;
    r.report = {{"surface", s.to_json()},
                {"presentation", gen.presentation.to_json()},
                {"provenance", gen.provenance},
                {"isomorphic", iso.has_value()}};
    if (iso) r.report["arrow_map"] = *iso;
    r.verdict = iso ? Verdict::pass : Verdict::fail;
    r.summary = {std::string(is_annulus ? "annulus" : "disc") + " n=" + std::to_string(c.n) +
                 " isomorphic: " + (iso ? "yes" : "no")};
    return r;
}

Result arc_compare(const RunConfig& c) {
    need_n(c, 1);
    Result a = arc_surface(c, true);
    Result d = arc_surface(c, false);
    Result r;
    r.report = {{"annulus_isomorphic", a.report["isomorphic"]},
                {"disc_isomorphic", d.report["isomorphic"]}};
    r.verdict = worst(a.verdict, d.verdict);
    r.summary = {a.summary[0], d.summary[0]};
    return r;
}

// --- twcat --------------------------------------------------------------

Result twcat_halftwist(const RunConfig& c) {
    need_n(c, 2);
    Result r;
    r.report["reports"] = nlohmann::json::array();
    for (const auto& rep : verify_halftwist(c.n)) {
        r.report["reports"].push_back(rep.to_json());
        if (!rep.passed()) r.verdict = Verdict::fail;
        r.summary.push_back(std::string(rep.wrapping == Wrapping::left ? "left" : "right") +
                            ": q2q1 = " + rep.q2q1 + ", q1q2 = " + rep.q1q2);
    }
    return r;
}

// --- toric --------------------------------------------------------------

Result toric_sections(const RunConfig& c) {
    need_n(c, 1, 8);
    const int bound = c.bound.value_or(default_toric_bound(c.n));
    Result r;
    r.report["sections"] = nlohmann::json::array();
    for (int i = 1; i <= c.n; ++i) {
        auto sb = section_basis(i, c.n, bound);
        bool certs = true;
        for (const auto& cert : sb.certificates) certs = certs && check_certificate(c.n, i, cert);
        r.report["sections"].push_back(sb.to_json());
        if (!certs) r.verdict = Verdict::fail;
        else if (sb.status != SectionStatus::complete) r.verdict = worst(r.verdict, Verdict::inconclusive);
        r.summary.push_back("M" + std::to_string(i) + ": " + std::to_string(sb.monomials.size()) +
                            " sections, ideal (" + sb.ideal.first + ", " + sb.ideal.second + ")");
    }
    return r;
}

Result toric_wedge(const RunConfig& c) {
    need_n(c, 2, 14);
    auto rep = wedge_nonvanishing(c.n);
    Result r;
    r.report = rep.to_json();
    r.verdict = rep.holds ? Verdict::pass : Verdict::fail;
    r.summary = {std::to_string(rep.patterns) + " patterns, holds: " + (rep.holds ? "yes" : "no")};
    return r;
}

Result toric_end(const RunConfig& c) {
    need_n(c, 1, 8);
    auto rep = end_algebra(c.n, c.bound.value_or(default_toric_bound(c.n)), field_of(c));
    Result r;
    r.report = rep.to_json();
    r.verdict = rep.passed() ? Verdict::pass : Verdict::fail;
    r.summary = {"bijective: " + std::string(rep.bijective ? "yes" : "no"),
                 "multiplicative: " + std::string(rep.multiplicative ? "yes" : "no")};
    return r;
}

Result toric_base_change(const RunConfig& c) {
    need_n(c, 1, 8);
    const PolyRing s(field_of(c), ring_variables(c));
    auto rep = base_change_end(c.n, parse_f(c, s, static_cast<std::size_t>(c.n + 1)),
                               c.bound.value_or(default_toric_bound(c.n)));
    Result r;
    r.report = rep.to_json();
    r.verdict = rep.ok ? Verdict::pass : Verdict::fail;
    r.summary = rep.relations;
    return r;
}

// --- cohom --------------------------------------------------------------

Result cohom_sphere(const RunConfig& c) {
    auto rep = sphere_report(field_of(c), c.bound.value_or(6));
    Result r;
    r.report = rep.to_json();
    r.verdict = rep.d_squared_zero ? Verdict::pass : Verdict::fail;
    for (const auto& d : rep.degrees) {
        r.verdict = worst(r.verdict, of_status(d.status));
        r.summary.push_back("H^" + std::to_string(d.degree) + ": rank " + std::to_string(d.rank) +
                            " (" + status_name(d.status) + ")");
    }
    return r;
}

bool is_august(const RunConfig& c, const Presentation& p) {
    if (c.n != 2 || p.ring().nvars() != 2) return false;
    const PolyRing& s = p.ring();
    const std::vector<Poly> want{Poly::parse(s, "x"), Poly::parse(s, "x^2+y^3"), Poly::parse(s, "y")};
    return s.variables() == std::vector<std::string>{"x", "y"} && parse_f(c, s, 3) == want;
}

Result cohom_contraction_h0(const RunConfig& c) {
    need_n(c, 1);
    const auto p = contraction_from(c);
    const int bound = c.bound.value_or(10);
    Result r;
    if (!c.f.empty() && is_august(c, p)) {
        auto rel = august_relations(p.ring().field(), bound);
        r.report = {{"example", "August"}, {"relations", rel.to_json()}};
        r.verdict = rel.all_member() ? Verdict::pass : Verdict::inconclusive;
        for (const auto& ch : rel.checks)
            r.summary.push_back(ch.name + ": " + ch.lhs + " = " + ch.rhs + (ch.member ? "" : "  [not found]"));
        return r;
    }
    const Bounds b{c.len.value_or(4), bound};
    auto h0 = h0_presentation(p, b);
    r.report = {{"presentation", p.to_json()}, {"h0", h0.to_json(p)}};
    r.verdict = h0.closure_failures.empty() ? Verdict::pass : Verdict::inconclusive;
    for (const auto& [name, g] : h0.ideal_generators) r.summary.push_back("d(" + name + ") = " + p.format(g));
    return r;
}

Result cohom_truncated(const RunConfig& c) {
    need_n(c, 1);
    const auto p = contraction_from(c);
    if (c.vertex < 0 || c.vertex >= c.n) throw UsageError("--vertex out of range");
    if (c.m < 0) throw UsageError("--m must be nonnegative");
    const int bound = c.bound.value_or(8);
    auto rep = truncated_cohomology(p, c.vertex, c.vertex, c.m, Bounds{c.len.value_or(bound), bound});
    Result r;
    r.report = rep.to_json();
    r.verdict = of_status(rep.status);
    r.summary = {"H^" + std::to_string(rep.degree) + ": rank " + std::to_string(rep.rank) + " (" +
                 status_name(rep.status) + ")"};
    for (const auto& g : rep.generators) r.summary.push_back("  " + g);
    return r;
}

Result cohom_localization(const RunConfig& c) {
    const PolyRing s(field_of(c), ring_variables(c));
    const auto f = parse_f(c, s, 2);
    LocalizationReport rep;
    try {
        rep = localization_consistency(f, c.bound.value_or(8), c.m > 0 ? c.m : 4);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Result r;
    r.report = rep.to_json();
    for (const auto& row : rep.rows) {
        const bool stable = row.localized.status == CohomStatus::stable && row.gamma.status == CohomStatus::stable;
        if (stable && row.localized.rank != row.gamma.rank) r.verdict = Verdict::fail;
        else if (!stable) r.verdict = worst(r.verdict, Verdict::inconclusive);
        r.summary.push_back("H^" + std::to_string(-row.m) + ": localized " + std::to_string(row.localized.rank) +
                            " (" + status_name(row.localized.status) + "), gamma " +
                            std::to_string(row.gamma.rank) + " (" + status_name(row.gamma.status) + ")");
    }
    return r;
}

// --- verify -------------------------------------------------------------

Result verify_all(const RunConfig&) {
    Result r;
    r.report["criteria"] = nlohmann::json::array();
    for (const auto& crit : acceptance_criteria()) {
        r.report["criteria"].push_back(crit.to_json());
        r.verdict = worst(r.verdict, crit.verdict);
        r.summary.push_back("[" + verdict_name(crit.verdict) + "] " + std::to_string(crit.id) + ". " +
                            crit.title + " (" + crit.detail + ")");
    }
    return r;
}

std::string render(const RunConfig& c, const Result& r) {
    if (c.format == OutputFormat::json) {
        nlohmann::json j;
        j["command"] = c.command;
        j["config"] = c.to_json();
        j["verdict"] = verdict_name(r.verdict);
        j["report"] = r.report;
        return j.dump(2) + "\n";
    }
    std::string out = c.command + "\n";
    for (const auto& line : r.summary) out += line + "\n";
    out += "verdict: " + verdict_name(r.verdict) + "\n";
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tube-ncr: tube algebra, arc models, twisted complexes, toric B-side and contraction algebras"};
    app.name("tube-ncr");
    app.require_subcommand(1);
    RunConfig cfg;
    int bound = -1, len = -1;
    std::string format = "json";
    std::function<Result(const RunConfig&)> action;

    auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help,
                    std::function<Result(const RunConfig&)> fn) {
        CLI::App* s = group->add_subcommand(name, help);
        s->add_option("--field", cfg.field, "q or fp (e.g. f5)");
        s->add_option("--n", cfg.n, "number of nonzero vertices");
        s->add_option("--f", cfg.f, "base-change polynomials")->expected(1, -1);
        s->add_option("--vars", cfg.vars, "ring variables (default: identifiers in --f)")->delimiter(',');
        s->add_option("--bound", bound, "degree / weight bound");
        s->add_option("--len", len, "word length bound");
        s->add_option("--m", cfg.m, "cohomological degree -m");
        s->add_option("--vertex", cfg.vertex, "vertex index");
        s->add_option("--convention", cfg.convention, "arrow convention")
            ->check(CLI::IsMember({"standard", "reversed"}));
        s->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        s->add_option("-o,--output", cfg.output, "report path (default stdout)");
        s->callback([&, fn, path = group->get_name() + " " + name] {
            cfg.command = path;
            action = fn;
        });
    };

    auto* algebra = app.add_subcommand("algebra", "presentations")->require_subcommand(1);
    leaf(algebra, "tube", "tube algebra over k[t0..tn]", algebra_tube);
    leaf(algebra, "contraction", "contraction quiver for f", algebra_contraction);
    leaf(algebra, "localize", "Drinfeld localisation of the (base-changed) tube algebra", algebra_localize);
    auto* arc = app.add_subcommand("arc", "arc models")->require_subcommand(1);
    leaf(arc, "annulus", "annulus arc system", [](const RunConfig& c) { return arc_surface(c, true); });
    leaf(arc, "disc", "disc arc system", [](const RunConfig& c) { return arc_surface(c, false); });
    leaf(arc, "compare", "both round trips", arc_compare);
    auto* tw = app.add_subcommand("twcat", "twisted complexes")->require_subcommand(1);
    leaf(tw, "verify-halftwist", "half-twist equivalence over F2", twcat_halftwist);
    auto* toric = app.add_subcommand("toric", "toric B-side")->require_subcommand(1);
    leaf(toric, "sections", "section bases of M_i", toric_sections);
    leaf(toric, "wedge", "wedge nonvanishing", toric_wedge);
    leaf(toric, "end", "End algebra against the tube algebra", toric_end);
    leaf(toric, "base-change", "base change against substitution", toric_base_change);
    auto* cohom = app.add_subcommand("cohom", "cohomology")->require_subcommand(1);
    leaf(cohom, "sphere", "sphere complex", cohom_sphere);
    leaf(cohom, "contraction-h0", "H^0 of a contraction algebra", cohom_contraction_h0);
    leaf(cohom, "truncated", "truncated H^-m of a contraction algebra", cohom_truncated);
    leaf(cohom, "localization", "localisation against Gamma (n = 1)", cohom_localization);
    auto* verify = app.add_subcommand("verify", "acceptance checks")->require_subcommand(1);
    leaf(verify, "all", "all acceptance checks", verify_all);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "tube-ncr: " << e.what() << "\n" << app.help();
        return exit_usage;
    }
    if (bound >= 0) cfg.bound = bound;
    if (len >= 0) cfg.len = len;
    cfg.format = format == "text" ? OutputFormat::text : OutputFormat::json;

    Result result;
    try {
        result = action(cfg);
    } catch (const UsageError& e) {
        err << "tube-ncr: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "tube-ncr: " << e.what() << "\n";
        return 1;
    }
    const std::string text = render(cfg, result);
    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "tube-ncr: cannot write " << cfg.output << "\n";
            return 1;
        }
        f << text;
    }
    return exit_code(result.verdict);
}

}  // namespace tubencr
