#pragma once

#include <memory>
#include <string>
#include <vector>

#include "absorbtk/module.hpp"

namespace absorbtk {

/// kind is one of scalar, pauli, clockshift, projective.
struct InstanceSpec {
  std::string kind;
  std::vector<double> parameters;

  /// "clockshift(8)", "scalar(2)", "pauli".
  static InstanceSpec parse(const std::string& text);
  std::string label() const;
};

struct Instance {
  std::shared_ptr<const AlgebraContext> ctx;
  ModulePresentation pres;  // unscaled
};

/// Throws ConfigError for unknown kinds or invalid parameters.
Instance builtin_instance(const InstanceSpec& spec);

/// The fixed catalog used by verify-all and the acceptance runs.
std::vector<InstanceSpec> builtin_catalog();

}  // namespace absorbtk
