#include "absorbtk/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "absorbtk/absorb.hpp"
#include "absorbtk/connection.hpp"
#include "absorbtk/errors.hpp"
#include "absorbtk/halfline.hpp"
#include "absorbtk/instance_io.hpp"
#include "absorbtk/lift.hpp"

namespace absorbtk {

bool RunReport::pass() const {
  return errors.empty() && std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

void RunReport::sort() {
  std::stable_sort(metrics.begin(), metrics.end(), [](const Metric& a, const Metric& b) {
    return std::tie(a.instance, a.name, a.key) < std::tie(b.instance, b.name, b.key);
  });
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"instances", "absorb", "decay", "connection",
                                              "lift",      "halfline", "verify-all"};
  return names;
}

ErrorModel fit_error_model(const std::vector<std::array<double, 3>>& samples) {
  if (samples.size() < 2) throw DomainError("fit_error_model: need at least two samples");
  Eigen::MatrixXd a(samples.size(), 2);
  Eigen::VectorXd b(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    a(i, 0) = 1.0 / samples[i][0];
    a(i, 1) = samples[i][1] * samples[i][1];
    b(i) = samples[i][2];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

namespace {

struct Loaded {
  std::string label;
  ModulePresentation pres;  // rescaled
};

std::vector<Loaded> load_instances(const ExperimentConfig& cfg) {
  std::vector<Loaded> out;
  if (cfg.instance_file) {
    Instance inst = io::load_instance(*cfg.instance_file);
    out.push_back({inst.ctx->name(), rescale(inst.pres)});
    return out;
  }
  for (const auto& spec : cfg.instances) {
    Instance inst = builtin_instance(spec);
    out.push_back({spec.label(), rescale(inst.pres)});
  }
  return out;
}

class Recorder {
 public:
  Recorder(RunReport& rep, std::string instance) : rep_(rep), instance_(std::move(instance)) {}

  void le(const std::string& name, double key, double value, double bound) {
    add(name, key, value, bound, "<=", value <= bound);
  }
  void ge(const std::string& name, double key, double value, double bound) {
    add(name, key, value, bound, ">=", value >= bound);
  }
  void gt(const std::string& name, double key, double value, double bound) {
    add(name, key, value, bound, ">", value > bound);
  }
  void eq(const std::string& name, double key, double value, double expected) {
    add(name, key, value, expected, "==", value == expected);
  }
  void in(const std::string& name, double key, double value, double lo, double hi) {
    add(name, key, value, lo, "in", value >= lo && value <= hi, hi);
  }
  void info(const std::string& name, double key, double value) { add(name, key, value, 0.0, "info", true); }
  /// values[i] against values[i-1]; strict for "<", weak for "<=".
  void monotone(const std::string& name, const std::vector<double>& keys, const std::vector<double>& values,
                bool strict) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      const bool ok = strict ? values[i] < values[i - 1] : values[i] <= values[i - 1];
      add(name, keys[i], values[i], values[i - 1], strict ? "<" : "<=", ok);
    }
  }
  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      add("error." + what, 0.0, 1.0, 0.0, "info", false);
      rep_.errors.push_back(instance_ + ": " + what + ": " + e.what());
    }
  }

 private:
  void add(const std::string& name, double key, double value, double bound, const char* rel, bool pass,
           double hi = 0.0) {
    Metric m;
    m.instance = instance_;
    m.name = name;
    m.key = key;
    m.value = value;
    m.bound = bound;
    m.bound_hi = hi;
    m.relation = rel;
    m.pass = pass && !std::isnan(value);
    rep_.metrics.push_back(std::move(m));
  }

  RunReport& rep_;
  std::string instance_;
};

double as_key(Index n) { return static_cast<double>(n); }

ComplexMatrix random_coefficients(const AbsorptionSystem& sys, std::mt19937_64& rng) {
  ComplexMatrix out(sys.dim(), sys.d());
  for (Index j = 0; j < sys.J(); ++j) out.middleRows(j * sys.d(), sys.d()) = random_element(*sys.pres.ctx, rng);
  return out;
}

ComplexMatrix random_hermitian(Index k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(k, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < k; ++i) a(i, j) = Complex(normal(rng), normal(rng));
  return (a + a.adjoint()) / (2.0 * std::sqrt(static_cast<double>(k)));
}

// ---- instances ----

void run_instances(const ExperimentConfig& cfg, RunReport& rep, const Loaded& inst) {
  Recorder rec(rep, inst.label);
  rec.guarded("instances", [&] {
    const AlgebraContext& ctx = *inst.pres.ctx;
    const BlockOperator g = gram(inst.pres);
    const auto spec = opcore::eigh(g.matrix);
    rec.info("d", 0, as_key(ctx.d()));
    rec.info("J", 0, as_key(inst.pres.J));
    rec.info("m", 0, as_key(inst.pres.m));
    rec.info("algebra_dimension", 0, as_key(ctx.dimension()));
    rec.info("omega_dimension", 0, as_key(omega_algebra(ctx).dimension()));
    rec.le("gram_hermiticity", 0, opcore::hermiticity_residual(g.matrix), cfg.tolerance("hermiticity"));
    rec.ge("gram_min_eigenvalue", 0, spec.min_eigenvalue(), -1e-10);
    rec.info("gram_max_eigenvalue", 0, spec.max_eigenvalue());
    rec.le("gram_membership", 0, *std::max_element(g.membership.begin(), g.membership.end()), kMembershipThreshold);
    rec.le("normalization", 0, normalization_bound(inst.pres), 1.0 + 1e-12);
    rec.le("closure_residual", 0, ctx.closure_residual(), 1e-10);
    double anti = 0.0;
    for (const auto& a : ctx.basis())
      anti = std::max(anti, opcore::op_norm(derive(ctx, a.adjoint()) + derive(ctx, a).adjoint()));
    rec.le("derivation_antisymmetry", 0, anti, cfg.tolerance("hermiticity"));
  });
}

// ---- absorb ----

void run_absorb(const ExperimentConfig& cfg, RunReport& rep, const Loaded& inst) {
  Recorder rec(rep, inst.label);
  rec.guarded("absorb", [&] {
    const Index top = std::max<Index>(512, 2 * cfg.levels.back());
    const AbsorptionSystem full = build_isometry(inst.pres, top);
    const ComplexMatrix& g = full.G.matrix;

    double tel = 0.0, law = 0.0;
    for (Index n = 4; n <= 512; n *= 2) {
      tel = std::max(tel, telescoping_residual(full.chain, g, n));
      law = std::max(law, isometry_defect(g, n) * static_cast<double>(n));
    }
    rec.le("telescoping_sweep_4_512", 512, tel, cfg.tolerance("telescoping"));
    rec.le("dfct_times_N_sweep_4_512", 512, law, 1.0 + cfg.tolerance("defect_slack"));

    std::mt19937_64 rng(cfg.seed);
    std::vector<double> keys, tails;
    for (Index n : cfg.levels) {
      const double key = as_key(n);
      const AbsorptionSystem sys = truncate(full, n);
      const double dfct = sys.dfct();
      rec.le("dfct", key, dfct, 1.0 / key);
      rec.le("dfct_times_N", key, dfct * key, 1.0 + cfg.tolerance("defect_slack"));
      rec.le("telescoping", key, telescoping_residual(full.chain, g, n), cfg.tolerance("telescoping"));
      const KReport k = build_K(sys);
      rec.le("commutation", key, k.commutation, cfg.tolerance("commutation"));
      if (sys.invertible()) {
        rec.gt("wkw_min_eigenvalue", key, k.wkw_min, 0.0);
        const ComplexMatrix eta = random_coefficients(sys, rng);
        // equality at G = 1, so the bound carries the rounding slack
        rec.le("frame_residual", key, frame_residual(sys, eta),
               dfct * module_norm(g, eta) * sys.kappa() * (1.0 + cfg.tolerance("defect_slack")));
      } else {
        rec.info("wkw_min_eigenvalue_singular_G", key, k.wkw_min);
      }
      if (2 * n <= top) {
        const TailReport t = diff_compact_tail(full, n, 2 * n);
        rec.le("tail", key, t.tail, t.bound);
        keys.push_back(key);
        tails.push_back(t.tail);
      }
    }
    if (!full.pres.ctx->derivation_vanishes()) rec.monotone("tail_decreasing", keys, tails, true);
  });
}

// ---- decay ----

void run_decay(const ExperimentConfig& cfg, RunReport& rep, const Loaded& inst) {
  Recorder rec(rep, inst.label);
  rec.guarded("decay", [&] {
    const BlockOperator g = gram(inst.pres);
    const ComplexMatrix dt = blockwise(inst.pres.ctx->D0(), inst.pres.J);
    const auto ns = decay_ladder(cfg.decay_lo, cfg.decay_hi, cfg.decay_per_octave);
    const DecayProfile prof = decay_profile(g.matrix, dt, ns);
    for (const auto& row : prof.rows) {
      rec.info("r_n", as_key(row.n), row.r_spectral);
      rec.le("engine_gap", as_key(row.n), row.engine_gap, cfg.tolerance("decay_agreement"));
    }
    if (prof.exact_zero) {
      rec.info("exact_zero", 0, 1.0);
      return;
    }
    rec.in("slope", 0, prof.slope, -1.2, -0.8);
    rec.le("bounded_ratio", 0, prof.bounded_ratio, cfg.tolerance("decay_ratio"));
  });
}

// ---- connection ----

void run_connection(const ExperimentConfig& cfg, RunReport& rep, const Loaded& inst) {
  Recorder rec(rep, inst.label);
  rec.guarded("connection", [&] {
    const AbsorptionSystem full = build_isometry(inst.pres, cfg.levels.back());
    const AlgebraContext& ctx = *inst.pres.ctx;
    const OmegaAlgebra omega = omega_algebra(ctx);
    rec.info("omega_dimension", 0, as_key(omega.dimension()));
    rec.le("omega_closure", 0, omega.closure_residual(), 1e-10);
    const bool zero = ctx.derivation_vanishes();
    std::mt19937_64 rng(cfg.seed + 2);
    const ComplexMatrix a = random_element(ctx, rng);
    std::vector<double> keys, leib, herm;
    for (Index n : cfg.levels) {
      const double key = as_key(n);
      const AbsorptionSystem sys = truncate(full, n);
      const ComplexMatrix xi = random_smooth_sample(sys, cfg.seed);
      const ComplexMatrix eta = random_smooth_sample(sys, cfg.seed + 1);
      const double l = leibniz_residual(sys, xi, a);
      const double h = hermitian_residual(sys, xi, eta);
      keys.push_back(key);
      leib.push_back(l);
      herm.push_back(h);
      rec.le("sample_inner_membership", key, ctx.membership_residual(xi.adjoint() * sys.G.matrix * eta),
             kMembershipThreshold);
      const ConnectionValue cv = grassmann(sys, xi);
      double slot_membership = 0.0;
      for (const auto& s : cv.slots) slot_membership = std::max(slot_membership, omega.membership_residual(s));
      rec.le("slot_membership", key, slot_membership, kMembershipThreshold);
      const double scale = std::max(1.0, opcore::op_norm(cv.generator_form));
      rec.le("route_agreement", key, opcore::op_norm(cv.generator_form - grassmann_alternate(sys, xi)) / scale,
             cfg.tolerance("route_agreement"));
      rec.le("leibniz_identity_element", key,
             leibniz_residual(sys, xi, ComplexMatrix::Identity(sys.d(), sys.d())), cfg.tolerance("zero_derivation"));
      if (zero) {
        rec.le("leibniz_residual", key, l, cfg.tolerance("zero_derivation"));
        rec.le("hermitian_residual", key, h, cfg.tolerance("zero_derivation"));
      } else if (sys.invertible()) {
        rec.le("leibniz_residual", key, l, leibniz_bound(sys, xi, a));
        rec.le("hermitian_residual", key, h, hermitian_bound(sys, xi, eta));
      } else {
        rec.info("leibniz_residual_singular_G", key, l);
        rec.info("hermitian_residual_singular_G", key, h);
      }
    }
    if (!zero) {
      rec.monotone("leibniz_decreasing", keys, leib, true);
      rec.monotone("hermitian_decreasing", keys, herm, true);
    }
  });
}

// ---- lift ----

void run_gns(const ExperimentConfig& cfg, Recorder& rec, const AlgebraContext& ctx) {
  const Index d = ctx.d();
  std::mt19937_64 rng(cfg.seed + 7);
  std::vector<std::pair<std::string, ComplexMatrix>> states;
  states.emplace_back("faithful", ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  ComplexMatrix pure = ComplexMatrix::Zero(d, d);
  pure(0, 0) = 1.0;
  states.emplace_back("pure", pure);
  {
    const Index rank = (d + 1) / 2;
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix v(d, rank);
    for (Index j = 0; j < rank; ++j)
      for (Index i = 0; i < d; ++i) v(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix s = v * v.adjoint();
    s /= s.trace().real();
    states.emplace_back("random_rank", s);
  }
  const ComplexMatrix x = random_hermitian(d, rng);
  const ComplexMatrix dr = random_hermitian(d, rng);
  for (const auto& [label, sigma] : states) {
    const GnsReport g = gns_localize(ctx, sigma, {});
    const Index rank = static_cast<Index>(
        (opcore::eigh(sigma).eigenvalues.array() > 1e-12).count());
    rec.eq("gns_dimension_" + label, 0, as_key(g.space.dimension()), as_key(d * rank));
    rec.le("gns_homomorphism_" + label, 0, g.homomorphism_residual, cfg.tolerance("gns"));
    rec.le("gns_state_" + label, 0, g.state_residual, cfg.tolerance("gns"));
    const double adj = std::max(localized_adjoint_residual(g.space, ctx.D0(), x),
                                localized_adjoint_residual(g.space, dr, x));
    rec.le("gns_localized_adjoint_" + label, 0, adj, cfg.tolerance("gns"));
    if (label == "faithful") {
      double worst = 0.0;
      for (const auto& a : ctx.basis())
        worst = std::max(worst, std::abs(opcore::op_norm(g.space.rep(a)) - opcore::op_norm(a)));
      worst = std::max(worst, std::abs(opcore::op_norm(g.space.rep(x)) - opcore::op_norm(x)));
      rec.le("gns_isometric_faithful", 0, worst, cfg.tolerance("gns"));
    }
  }
}

void run_lift(const ExperimentConfig& cfg, RunReport& rep, const Loaded& inst) {
  Recorder rec(rep, inst.label);
  rec.guarded("lift", [&] {
    const AbsorptionSystem full = build_isometry(inst.pres, cfg.levels.back());
    std::vector<double> keys, lvc;
    std::mt19937_64 rng(cfg.seed + 5);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector y(full.d());
    for (Index i = 0; i < y.size(); ++i) y(i) = Complex(normal(rng), normal(rng));
    for (Index n : cfg.levels) {
      const double key = as_key(n);
      auto sys = std::make_shared<const AbsorptionSystem>(truncate(full, n));
      const LiftSystem ls = make_lift_system(sys);
      const ComplexMatrix xi = random_smooth_sample(*sys, cfg.seed);
      rec.le("lift_hermiticity", key, opcore::hermiticity_residual(lift_operator(ls)), cfg.tolerance("hermiticity"));
      const double r = lift_vs_connection(ls, xi, y);
      keys.push_back(key);
      lvc.push_back(r);
      rec.info("lift_vs_connection", key, r);
      rec.info("projection_defect", key, projection_defect(ls));
      const RegularizedLift rl = regularized_lift(ls);
      rec.le("lift_commutator_residual", key, rl.commutator_residual, cfg.tolerance("lift_commutator"));
      rec.le("regularized_hermiticity", key, rl.hermiticity, cfg.tolerance("hermiticity"));
      if (sys->invertible()) rec.gt("delta_min_eigenvalue", key, rl.lambda_min_delta, 0.0);
      else rec.info("delta_min_eigenvalue_singular_G", key, rl.lambda_min_delta);
    }
    if (!inst.pres.ctx->derivation_vanishes()) rec.monotone("lift_vs_connection_decreasing", keys, lvc, true);
    else rec.le("lift_vs_connection_zero_derivation", 0, *std::max_element(lvc.begin(), lvc.end()), 1e-12);
    run_gns(cfg, rec, *inst.pres.ctx);
  });
}

void run_composition(const ExperimentConfig& cfg, RunReport& rep) {
  Recorder rec(rep, "matrix");
  rec.guarded("composition", [&] {
    std::mt19937_64 rng(cfg.seed + 11);
    std::uniform_int_distribution<int> size(1, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Index k = size(rng);
      const ComplexMatrix d = random_hermitian(k, rng);
      const ComplexMatrix x = random_hermitian(k, rng);
      worst = std::max(worst, composition_identities(d, x).worst());
    }
    rec.le("composition_identities_1000", 16, worst, cfg.tolerance("composition"));
  });
}

// ---- halfline ----

void run_halfline(const ExperimentConfig& cfg, RunReport& rep) {
  Recorder rec(rep, "halfline");
  rec.guarded("deficiency", [&] {
    std::vector<Index> ladder = cfg.ladder;
    std::sort(ladder.begin(), ladder.end());
    const auto rows = halfline::regularization_contrast(cfg.grid_length, ladder);
    std::vector<double> keys, reg, plus;
    for (const auto& row : rows) {
      const double key = as_key(row.P);
      rec.ge("defect_minus", key, row.minus, cfg.tolerance("defect_minus"));
      rec.info("defect_plus", key, row.plus);
      rec.ge("defect_gap", key, row.minus - row.plus, cfg.tolerance("defect_gap"));
      rec.info("regularized_defect_minus", key, row.minus_reg);
      rec.info("regularized_defect_plus", key, row.plus_reg);
      rec.le("regularized_symmetry", key, row.reg_symmetry, cfg.tolerance("symmetry"));
      keys.push_back(key);
      reg.push_back(row.minus_reg);
      plus.push_back(row.plus);
    }
    rec.monotone("regularized_nonincreasing", keys, reg, false);
    rec.monotone("defect_plus_decreasing", keys, plus, true);
    rec.le("defect_plus_finest", keys.back(), plus.back(), cfg.tolerance("defect_plus"));
    rec.le("regularized_defect_finest", keys.back(), reg.back(), cfg.tolerance("regularized_defect"));
  });
  rec.guarded("lift_apply", [&] {
    const double len = cfg.lift_length;
    std::vector<std::array<double, 3>> coarse;
    for (Index n : {256, 512})
      for (Index p : {256, 512}) coarse.push_back({as_key(n), len / as_key(p), halfline::lift_apply_error(len, p, n)});
    const ErrorModel model = fit_error_model(coarse);
    rec.info("model_c1", 0, model.c1);
    rec.info("model_c2", 0, model.c2);
    const double factor = cfg.tolerance("lift_model_factor");
    for (Index p = 1024; p <= std::max(cfg.lift_P, cfg.lift_levels); p *= 2) {
      const double err = halfline::lift_apply_error(len, p, p);
      rec.le("lift_apply_model", as_key(p), err, factor * model.predict(as_key(p), len / as_key(p)));
    }
    const double err = halfline::lift_apply_error(len, cfg.lift_P, cfg.lift_levels);
    rec.le("lift_apply_error", as_key(cfg.lift_levels), err, cfg.tolerance("lift_apply"));
  });
}

std::string join(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

void prefix_names(RunReport& rep, std::size_t from, const std::string& prefix) {
  for (std::size_t i = from; i < rep.metrics.size(); ++i) rep.metrics[i].name = prefix + "." + rep.metrics[i].name;
}

}  // namespace

RunReport run_command(const std::string& command, const ExperimentConfig& cfg) {
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    throw ConfigError("unknown command '" + command + "'");
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = command;
  std::string labels;
  const std::vector<Loaded> instances = load_instances(cfg);
  for (const auto& inst : instances) labels += (labels.empty() ? "" : " ") + inst.label;
  rep.parameters = {{"instances", labels},
                    {"levels", join(cfg.levels)},
                    {"seed", std::to_string(cfg.seed)},
                    {"decay_range", std::to_string(cfg.decay_lo) + " " + std::to_string(cfg.decay_hi)},
                    {"ladder", join(cfg.ladder)},
                    {"grid_length", io::format_double(cfg.grid_length)},
                    {"lift", io::format_double(cfg.lift_length) + " P=" + std::to_string(cfg.lift_P) +
                                 " N=" + std::to_string(cfg.lift_levels)}};
  for (const auto& [name, v] : cfg.tolerances) rep.parameters.emplace_back("tolerance." + name, io::format_double(v));

  auto per_instance = [&](void (*fn)(const ExperimentConfig&, RunReport&, const Loaded&)) {
    for (const auto& inst : instances) fn(cfg, rep, inst);
  };
  auto stage = [&](const std::string& name) {
    const std::size_t from = rep.metrics.size();
    if (name == "instances") per_instance(run_instances);
    else if (name == "absorb") per_instance(run_absorb);
    else if (name == "decay") per_instance(run_decay);
    else if (name == "connection") per_instance(run_connection);
    else if (name == "lift") {
      per_instance(run_lift);
      run_composition(cfg, rep);
    } else if (name == "halfline") run_halfline(cfg, rep);
    if (command == "verify-all") prefix_names(rep, from, name);
  };
  if (command == "verify-all") {
    for (const auto& name : command_names())
      if (name != "verify-all") stage(name);
  } else {
    stage(command);
  }
  rep.sort();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string csv_schema(const std::string& command) {
  return "#schema=absorbtk." + command + ".v1 instance,metric,key,value,bound,relation,pass";
}

std::string render_csv(const RunReport& report) {
  std::ostringstream out;
  out << csv_schema(report.command) << '\n' << "instance,metric,key,value,bound,relation,pass\n";
  for (const auto& m : report.metrics) {
    std::string bound = m.relation == "info" ? "" : io::format_double(m.bound);
    if (m.relation == "in") bound = io::format_double(m.bound) + ":" + io::format_double(m.bound_hi);
    out << m.instance << ',' << m.name << ',' << io::format_double(m.key) << ',' << io::format_double(m.value) << ','
        << bound << ',' << m.relation << ',' << (m.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string render_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.parameters) j["parameters"][k] = v;
  j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : report.metrics) {
    nlohmann::ordered_json row{{"instance", m.instance}, {"name", m.name}, {"key", m.key},
                               {"value", std::isfinite(m.value) ? nlohmann::ordered_json(m.value)
                                                                : nlohmann::ordered_json(io::format_double(m.value))},
                               {"relation", m.relation}, {"pass", m.pass}};
    if (m.relation != "info") row["bound"] = m.bound;
    if (m.relation == "in") row["bound_hi"] = m.bound_hi;
    j["metrics"].push_back(std::move(row));
  }
  j["errors"] = report.errors;
  j["pass"] = report.pass();
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / report.command;
  std::ofstream csv(base.string() + ".csv", std::ios::binary);
  std::ofstream json(base.string() + ".json", std::ios::binary);
  if (!csv || !json) throw ConfigError("cannot write reports to '" + dir + "'");
  csv << render_csv(report);
  json << render_json(report);
}

}  // namespace absorbtk
