#pragma once

// Command-line front end:
//   fracspec solve|converge|compare --config <path> [--out <dir>]
//
// Exit status: 0 success, 1 configuration or input-data error, 2 numerical failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/assembly.hpp"

namespace fracspec::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_numerical = 2;

struct RunConfig {
    double alpha = 0.0;
    double r = 0.0;
    Variant variant = Variant::acute;
    std::vector<std::string> k;  // one entry, or several for a comparison sweep
    std::string b = "0";
    std::string c = "0";
    std::string f;
    std::optional<int> N;
    int N_ref = 40;
    std::vector<int> Ns;
    std::optional<int> quad_points;
    int grid_points = 1001;
    std::string output = "fracspec_out";
};

/// Validates field names and types; throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration (defaults filled in).
nlohmann::json to_json(const RunConfig& cfg);

/// Throws ParseError for malformed expressions, DomainError for bad (alpha, r).
ProblemSpec make_problem(const RunConfig& cfg, const std::string& k, int N);

int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_converge(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);

/// Entry point used by the executable.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracspec::cli
