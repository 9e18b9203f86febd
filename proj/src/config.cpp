#include "absorbtk/config.hpp"

#include <sstream>

#include "absorbtk/errors.hpp"
#include "absorbtk/instance_io.hpp"

namespace absorbtk {

std::map<std::string, double> ExperimentConfig::default_tolerances() {
  return {
      {"telescoping", 1e-10},      {"defect_slack", 1e-9},      {"commutation", 1e-10},
      {"decay_agreement", 1e-8},   {"decay_ratio", 1.1},        {"zero_derivation", 1e-12},
      {"route_agreement", 1e-12},  {"hermiticity", 1e-12},      {"lift_commutator", 1e-10},
      {"composition", 1e-12},      {"gns", 1e-10},              {"defect_minus", 0.9},
      {"defect_plus", 0.1},        {"defect_gap", 0.7},         {"regularized_defect", 0.2},
      {"symmetry", 1e-10},         {"lift_apply", 0.01},        {"lift_model_factor", 1.25},
  };
}

double ExperimentConfig::tolerance(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

namespace {

std::vector<Index> parse_index_list(const io::Entry& e) {
  std::vector<Index> out;
  std::istringstream in(e.value);
  std::string tok;
  while (in >> tok) out.push_back(static_cast<Index>(io::parse_integer(tok, e.line, e.column)));
  if (out.empty()) throw ParseError("'" + e.key + "' needs at least one value", e.line, e.column);
  return out;
}

void set_tolerance(ExperimentConfig& cfg, const std::string& name, double value) {
  if (!cfg.tolerances.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
  if (!(value > 0)) throw ConfigError("tolerance '" + name + "' must be positive");
  cfg.tolerances[name] = value;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const io::Document doc = io::parse_document(text);
  ExperimentConfig cfg;
  for (const auto& sec : doc.sections) {
    for (const auto& e : sec.entries) {
      if (e.matrix) throw ParseError("matrix values are not allowed in a config", e.line, e.column);
      if (sec.name == "experiment") {
        if (e.key == "instances") {
          cfg.instances.clear();
          std::istringstream in(e.value);
          std::string tok;
          while (in >> tok) cfg.instances.push_back(InstanceSpec::parse(tok));
        } else if (e.key == "instance_file") {
          cfg.instance_file = e.value;
        } else if (e.key == "levels") {
          cfg.levels = parse_index_list(e);
        } else if (e.key == "seed") {
          cfg.seed = static_cast<std::uint64_t>(io::parse_integer(e.value, e.line, e.column));
        } else if (e.key == "threads") {
          cfg.threads = static_cast<int>(io::parse_integer(e.value, e.line, e.column));
        } else if (e.key == "output_dir") {
          cfg.output_dir = e.value;
        } else if (e.key == "decay_range") {
          const auto r = parse_index_list(e);
          if (r.size() != 2) throw ParseError("decay_range needs two values", e.line, e.column);
          cfg.decay_lo = r[0];
          cfg.decay_hi = r[1];
        } else if (e.key == "decay_per_octave") {
          cfg.decay_per_octave = static_cast<int>(io::parse_integer(e.value, e.line, e.column));
        } else {
          throw ParseError("unknown key '" + e.key + "' in [experiment]", e.line, e.column);
        }
      } else if (sec.name == "halfline") {
        if (e.key == "length") cfg.grid_length = io::parse_double(e.value, e.line, e.column);
        else if (e.key == "ladder") cfg.ladder = parse_index_list(e);
        else if (e.key == "lift_length") cfg.lift_length = io::parse_double(e.value, e.line, e.column);
        else if (e.key == "lift_P") cfg.lift_P = static_cast<Index>(io::parse_integer(e.value, e.line, e.column));
        else if (e.key == "lift_levels") cfg.lift_levels = static_cast<Index>(io::parse_integer(e.value, e.line, e.column));
        else throw ParseError("unknown key '" + e.key + "' in [halfline]", e.line, e.column);
      } else if (sec.name == "tolerances") {
        try {
          set_tolerance(cfg, e.key, io::parse_double(e.value, e.line, e.column));
        } catch (const ParseError&) {
          throw;
        } catch (const ConfigError& err) {
          throw ParseError(err.what(), e.line, e.column);
        }
      } else {
        throw ParseError("unknown section [" + sec.name + "]", sec.line, 1);
      }
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(io::read_file(path)); }

void apply_tolerance_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tolerance expects NAME=VALUE, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  double value = 0.0;
  try {
    value = io::parse_double(assignment.substr(eq + 1), 1, static_cast<int>(eq + 2));
  } catch (const ParseError&) {
    throw ConfigError("malformed tolerance value in '" + assignment + "'");
  }
  set_tolerance(cfg, name, value);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.levels.empty()) throw ConfigError("levels must be non-empty");
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    if (cfg.levels[i] < 1) throw ConfigError("levels must be positive");
    if (i && cfg.levels[i] <= cfg.levels[i - 1]) throw ConfigError("levels must be strictly ascending");
  }
  for (const auto& [name, v] : cfg.tolerances)
    if (!(v > 0)) throw ConfigError("tolerance '" + name + "' must be positive");
  if (cfg.ladder.empty()) throw ConfigError("halfline ladder must be non-empty");
  for (Index p : cfg.ladder)
    if (p < 9) throw ConfigError("halfline ladder values must be >= 9");
  if (!(cfg.grid_length > 0) || !(cfg.lift_length > 6)) throw ConfigError("halfline lengths invalid");
  if (cfg.decay_lo < 1 || cfg.decay_hi <= cfg.decay_lo || cfg.decay_per_octave < 1)
    throw ConfigError("decay range invalid");
  if (cfg.instances.empty() && !cfg.instance_file) throw ConfigError("no instances selected");
}

}  // namespace absorbtk
