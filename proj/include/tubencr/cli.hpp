#pragma once

// Batch front end: the acceptance manifest and the tube-ncr command line.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace tubencr {

enum class Verdict { pass, fail, inconclusive };

std::string verdict_name(Verdict v);
/// 0 pass, 1 fail, 2 inconclusive.
int exit_code(Verdict v);
/// fail beats inconclusive beats pass.
Verdict worst(Verdict a, Verdict b);

struct Criterion {
    int id = 0;
    std::string title;
    Verdict verdict = Verdict::fail;
    std::string detail;
    nlohmann::json data;
    nlohmann::json to_json() const;
};

/// Runs the twelve acceptance checks in manifest order.
std::vector<Criterion> acceptance_criteria();
Criterion run_criterion(int id);
constexpr int criterion_count = 12;

enum class OutputFormat { json, text };

struct RunConfig {
    std::string command;     // e.g. "cohom sphere"
    std::string field = "q";
    int n = 2;
    std::vector<std::string> f;
    std::vector<std::string> vars;
    std::optional<int> bound;
    std::optional<int> len;
    int m = 0;
    int vertex = 0;
    std::string convention = "standard";
    OutputFormat format = OutputFormat::json;
    std::string output;      // empty: stdout

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Exit codes: 0 pass, 1 fail, 2 inconclusive at bound, 64 usage.
constexpr int exit_usage = 64;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubencr
