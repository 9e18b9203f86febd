#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absorbtk/catalog.hpp"

namespace absorbtk {

struct ExperimentConfig {
  /// Built-in instances to run; ignored when instance_file is set.
  std::vector<InstanceSpec> instances = builtin_catalog();
  std::optional<std::string> instance_file;
  std::vector<Index> levels{8, 16, 32, 64};
  Index decay_lo = 16;
  Index decay_hi = 512;
  int decay_per_octave = 8;
  /// Half-line deficiency ladder (values of P = M + 1) on (0, length).
  double grid_length = 30.0;
  std::vector<Index> ladder{512, 1024, 2048, 4096};
  /// Lift-action probe: bump on [2, 6] inside (0, lift_length).
  double lift_length = 20.0;
  Index lift_P = 4096;
  Index lift_levels = 4096;
  std::uint64_t seed = 20240611;
  int threads = 0;
  std::string output_dir = "absorbtk_out";
  std::map<std::string, double> tolerances = default_tolerances();

  static std::map<std::string, double> default_tolerances();
  double tolerance(const std::string& name) const;
};

/// Sections [experiment], [halfline], [tolerances]; see README. Throws ParseError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "NAME=VALUE"; unknown names and non-positive values throw ConfigError.
void apply_tolerance_override(ExperimentConfig& cfg, const std::string& assignment);

/// Levels non-empty and strictly ascending, tolerances positive, ladder valid.
void validate(const ExperimentConfig& cfg);

}  // namespace absorbtk
