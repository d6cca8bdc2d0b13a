#pragma once

#include "fracnet/dfn.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace fracnet {

/// Options for the flow, advection and metric stages of a run.
struct PipelineOptions {
    int grid_n = 128;
    double tau = 1.0;
    double rho_in = 1.001;
    double rho_out = 0.999;
    double tol = 1e-7;
    std::int64_t max_iters = 2'000'000;
    int workers = 1;
    double advect_tol = 1e-10;
    std::uint64_t census_cap = 100'000'000;

    friend bool operator==(const PipelineOptions&, const PipelineOptions&) = default;
};

struct RunConfig {
    GeneratorConfig generator;
    PipelineOptions run;
    std::set<std::string> explicit_keys; // keys present in the parsed text
};

/// Parses `key=value` lines; `#` starts a comment. Unknown keys and malformed
/// lines raise ParseError with the line number; violated invariants raise
/// ValidationError naming the field. Absent keys keep their defaults, with
/// alpha following 5 n / 2 and joint sets following njs unless given.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

/// Every key, one per line, in a form parse_config_text reads back.
std::string format_config(const RunConfig& cfg);

/// All recognized keys.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value (same rules as the file parser).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

std::string format_joint_sets(const std::vector<JointSet>& sets);

void validate(const PipelineOptions& run);

} // namespace fracnet
