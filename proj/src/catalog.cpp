#include "absorbtk/catalog.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>

#include "absorbtk/errors.hpp"

namespace absorbtk {

namespace {

ComplexMatrix unit(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

std::vector<ComplexMatrix> matrix_units(Index d) {
  std::vector<ComplexMatrix> out;
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) out.push_back(unit(d, i, j));
  return out;
}

ComplexMatrix clock(Index d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k)
    z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
  return z;
}

// X e_k = e_{k+1}
ComplexMatrix shift(Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

ComplexMatrix ramp(Index d) {
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) r(k, k) = static_cast<double>(k);
  return r;
}

Index integer_parameter(const InstanceSpec& spec, std::size_t i, Index fallback) {
  if (spec.parameters.size() <= i) return fallback;
  const double v = spec.parameters[i];
  if (v != std::floor(v)) throw ConfigError(spec.kind + ": parameter must be an integer");
  return static_cast<Index>(v);
}

ModulePresentation presentation(std::shared_ptr<const AlgebraContext> ctx,
                                 std::vector<std::vector<ComplexMatrix>> gens) {
  ModulePresentation p;
  p.ctx = std::move(ctx);
  p.J = static_cast<Index>(gens.size());
  p.m = static_cast<Index>(gens.front().size());
  p.generators = std::move(gens);
  p.scale.assign(p.J, 1.0);
  return p;
}

Instance scalar_instance(const InstanceSpec& spec) {
  if (spec.parameters.size() > 1) throw ConfigError("scalar takes at most one parameter");
  const double c = spec.parameters.empty() ? 1.0 : spec.parameters[0];
  if (!(c > 0)) throw ConfigError("scalar: generator value must be positive");
  auto ctx = std::make_shared<const AlgebraContext>(
      "scalar", std::vector<ComplexMatrix>{ComplexMatrix::Identity(1, 1)}, ComplexMatrix::Zero(1, 1));
  ComplexMatrix g(1, 1);
  g(0, 0) = c;
  return {ctx, presentation(ctx, {{g}})};
}

Instance pauli_instance(const InstanceSpec& spec) {
  if (!spec.parameters.empty()) throw ConfigError("pauli takes no parameters");
  const Complex i1(0.0, 1.0);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -i1, i1, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  auto ctx = std::make_shared<const AlgebraContext>("pauli", std::vector<ComplexMatrix>{id, sx, sy, sz},
                                                    sz);
  const ComplexMatrix e01 = unit(2, 0, 1), e10 = unit(2, 1, 0), e11 = unit(2, 1, 1);
  std::vector<std::vector<ComplexMatrix>> gens = {
      {0.6 * id + 0.2 * e01, 0.3 * e10 + 0.4 * id},
      {0.5 * id + 0.3 * e01, 0.6 * e11 + 0.2 * e10},
  };
  return {ctx, presentation(ctx, std::move(gens))};
}

Instance clockshift_instance(const InstanceSpec& spec) {
  if (spec.parameters.size() > 1) throw ConfigError("clockshift takes one parameter");
  const Index d = integer_parameter(spec, 0, 8);
  if (d < 2) throw ConfigError("clockshift: dimension must be >= 2");
  const ComplexMatrix z = clock(d), x = shift(d);
  std::vector<ComplexMatrix> basis;
  ComplexMatrix za = ComplexMatrix::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    ComplexMatrix m = za;
    for (Index b = 0; b < d; ++b) {
      basis.push_back(m);
      m = m * x;
    }
    za = za * z;
  }
  auto ctx = std::make_shared<const AlgebraContext>("clockshift(" + std::to_string(d) + ")",
                                                    std::move(basis), ramp(d));
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<std::vector<ComplexMatrix>> gens;
  ComplexMatrix zj = id;  // Z^j
  for (Index j = 0; j < 4; ++j) {
    const ComplexMatrix a = 0.5 * zj + 0.05 * x;
    const ComplexMatrix b = 0.4 * id + (0.05 * static_cast<double>(j + 1)) * (zj * z) * x.transpose();
    gens.push_back({a, b});
    zj = zj * z;
  }
  return {ctx, presentation(ctx, std::move(gens))};
}

// X = p A^2 with p = U U* for the isometry U = [cos(t) I; sin(t) S], S the shift;
// generators are the columns p e_i, so the Gram matrix is p itself.
Instance projective_instance(const InstanceSpec& spec) {
  if (spec.parameters.size() > 1) throw ConfigError("projective takes one parameter");
  const Index d = integer_parameter(spec, 0, 4);
  if (d < 1) throw ConfigError("projective: dimension must be >= 1");
  const double c = std::cos(0.6), s = std::sin(0.6);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix sh = shift(d);
  ComplexMatrix u(2 * d, d);
  u << c * id, s * sh;
  const ComplexMatrix p = u * u.adjoint();
  auto ctx = std::make_shared<const AlgebraContext>("projective(" + std::to_string(d) + ")",
                                                    matrix_units(d), ramp(d));
  std::vector<std::vector<ComplexMatrix>> gens(2);
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k) gens[i].push_back(p.block(k * d, i * d, d, d));
  return {ctx, presentation(ctx, std::move(gens))};
}

}  // namespace

InstanceSpec InstanceSpec::parse(const std::string& text) {
  InstanceSpec spec;
  const auto open = text.find('(');
  spec.kind = text.substr(0, open);
  if (open == std::string::npos) return spec;
  const auto close = text.find(')', open);
  if (close == std::string::npos || close + 1 != text.size())
    throw ConfigError("malformed instance spec '" + text + "'");
  std::string args = text.substr(open + 1, close - open - 1);
  std::size_t pos = 0;
  while (pos <= args.size()) {
    const auto comma = args.find(',', pos);
    const std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw ConfigError("malformed instance parameter '" + tok + "' in '" + text + "'");
    spec.parameters.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

std::string InstanceSpec::label() const {
  if (parameters.empty()) return kind;
  std::string out = kind + "(";
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, parameters[i]);
    out += (i ? "," : "") + std::string(buf, res.ptr);
  }
  return out + ")";
}

Instance builtin_instance(const InstanceSpec& spec) {
  if (spec.kind == "scalar") return scalar_instance(spec);
  if (spec.kind == "pauli") return pauli_instance(spec);
  if (spec.kind == "clockshift") return clockshift_instance(spec);
  if (spec.kind == "projective") return projective_instance(spec);
  throw ConfigError("unknown instance kind '" + spec.kind + "'");
}

std::vector<InstanceSpec> builtin_catalog() {
  return {{"scalar", {}}, {"pauli", {}}, {"clockshift", {8}}, {"projective", {4}}};
}

}  // namespace absorbtk
