#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucf/errors.hpp"
#include "ucf/world.hpp"

namespace ucf::cli {

struct ConfigError : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct RunConfig {
    int n = 0;
    double a = 0.0;
    // Explicit centres, or random placement from (initial_seed, box).
    std::optional<std::vector<Point2>> centers;
    std::uint64_t initial_seed = 0;
    double box = 0.0;
    std::optional<std::vector<int>> handedness;
    ActivationPolicy policy;
    std::optional<std::size_t> max_rounds;
    std::uint64_t master_seed = 0;
    double eps_geom = kEpsGeom;
    double eps_snap = kEpsSnap;
    int collision_samples = 1000;
    int progress_window = 0;
    std::string trace_path;
    std::string report_path;
    std::string svg_dir;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const RunConfig& config);

// Throws ConfigError on any violated field constraint.
void validate(const RunConfig& config);

WorldState make_initial(const RunConfig& config);

}  // namespace ucf::cli
