#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cafsim/scenario.hpp"

namespace cafsim {

/// Parse or validation failure. Parse errors carry the offending line;
/// validation errors list every violated invariant with its field name and
/// the line it was set on.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// Loads a sweep description from an INI-style file:
///
///   [model]                 shared constants (channels, rates)
///   [scenario]              one section per scenario (label, mode, b_min, b_max)
///   [sweep]                 variable, grid (list or first:last:step), engines
///   [sim]                   events, warmup, replications, seed, track_map
///
/// Omitted [sim] keys get desk-scale defaults (1e6 events, 10% warmup,
/// 20 replications). An omitted grid defaults to lambda_p in {0.5, ..., 5.0}
/// when lambda_p is the swept variable. The swept variable may be omitted
/// from [model]; every grid point overrides it anyway.
SweepSpec load_config(const std::filesystem::path& path);

/// Same, for config text already in memory (`origin` names it in errors).
SweepSpec parse_config(const std::string& text, const std::string& origin = "<config>");

}  // namespace cafsim
