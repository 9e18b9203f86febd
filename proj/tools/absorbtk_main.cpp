#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absorbtk/config.hpp"
#include "absorbtk/errors.hpp"
#include "absorbtk/experiments.hpp"
#include "absorbtk/kernels.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"absorbtk - finite-truncation laboratory for differentiable absorption"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir, instance_file;
  std::vector<std::string> tolerances, instances;
  std::vector<long long> levels;
  long long seed = -1;
  int threads = 0;

  for (const auto& name : absorbtk::command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "experiment config file");
    sub->add_option("--out", out_dir, "output directory (default: $ABSORBTK_OUT or the config value)");
    sub->add_option("--seed", seed, "seed for randomized sweeps");
    sub->add_option("--threads", threads, "OpenMP threads (0: runtime default)");
    sub->add_option("--tolerance", tolerances, "NAME=VALUE override (repeatable)")->take_all();
    sub->add_option("--instance", instances, "built-in instance, e.g. pauli or clockshift(8) (repeatable)");
    sub->add_option("--instance-file", instance_file, "instance file to load instead of the catalog");
    sub->add_option("--levels", levels, "truncation levels N (ascending)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    absorbtk::ExperimentConfig cfg = config_path.empty() ? absorbtk::ExperimentConfig{} : absorbtk::load_config(config_path);
    if (const char* env = std::getenv("ABSORBTK_OUT"); env && *env) cfg.output_dir = env;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads > 0) cfg.threads = threads;
    if (!instances.empty()) {
      cfg.instances.clear();
      for (const auto& s : instances) cfg.instances.push_back(absorbtk::InstanceSpec::parse(s));
    }
    if (!instance_file.empty()) cfg.instance_file = instance_file;
    if (!levels.empty()) cfg.levels.assign(levels.begin(), levels.end());
    for (const auto& t : tolerances) absorbtk::apply_tolerance_override(cfg, t);
    absorbtk::validate(cfg);
    absorbtk::kernels::set_thread_count(cfg.threads);

    const absorbtk::RunReport report = absorbtk::run_command(command, cfg);
    absorbtk::write_report(report, cfg.output_dir);
    std::size_t failed = 0;
    for (const auto& m : report.metrics) {
      if (m.pass) continue;
      ++failed;
      std::cerr << "FAIL " << m.instance << ' ' << m.name << " key=" << m.key << " value=" << m.value
                << ' ' << m.relation << ' ' << m.bound << '\n';
    }
    for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
    std::cout << command << ": " << (report.pass() ? "PASS" : "FAIL") << " (" << report.metrics.size()
              << " metrics, " << failed << " failed, " << report.wall_seconds << " s) -> " << cfg.output_dir << '\n';
    return report.pass() ? kExitPass : kExitFail;
  } catch (const absorbtk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
