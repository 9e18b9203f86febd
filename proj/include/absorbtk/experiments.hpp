#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "absorbtk/config.hpp"

namespace absorbtk {

/// One checked quantity. relation: "<=", ">=", "<" (strict, vs. the previous
/// value), "in" (bound is the lower end, upper in bound_hi) or "info".
struct Metric {
  std::string instance;
  std::string name;
  double key = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double bound_hi = 0.0;
  std::string relation = "info";
  bool pass = true;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Metric> metrics;
  std::vector<std::string> errors;
  double wall_seconds = 0.0;

  bool pass() const;
  /// Sorted by (instance, name, key), so output is order-independent.
  void sort();
};

const std::vector<std::string>& command_names();

/// Runs one command. Module failures become failing "error" metrics; ConfigError propagates.
RunReport run_command(const std::string& command, const ExperimentConfig& cfg);

std::string csv_schema(const std::string& command);
std::string render_csv(const RunReport& report);
std::string render_json(const RunReport& report);
/// Writes <dir>/<command>.csv and <dir>/<command>.json.
void write_report(const RunReport& report, const std::string& dir);

/// C1/N + C2 h^2 fitted by least squares to (N, h, error) triples.
struct ErrorModel {
  double c1 = 0.0;
  double c2 = 0.0;
  double predict(double n, double h) const { return c1 / n + c2 * h * h; }
};
ErrorModel fit_error_model(const std::vector<std::array<double, 3>>& samples);

}  // namespace absorbtk
