#include "absorbtk/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absorbtk/cstar.hpp"
#include "absorbtk/errors.hpp"
#include "absorbtk/kernels.hpp"

namespace absorbtk {

ResolventChain resolvent_chain(const ComplexMatrix& g, Index levels, Execution ex) {
  if (levels < 1) throw DomainError("resolvent_chain: N must be >= 1");
  if (opcore::hermiticity_residual(g) > 1e-12)
    throw DomainError("resolvent_chain: G is not Hermitian");
  const opcore::SpectralDecomposition spec = opcore::eigh(g);
  if (spec.min_eigenvalue() < -1e-10)
    throw NotPositiveError("resolvent_chain: G is not positive", spec.min_eigenvalue());

  ResolventChain chain;
  chain.G.resize(levels);
  chain.H.resize(levels);
  chain.sqrtH.resize(levels);
  kernels::for_each_index(levels, ex, [&](Index i) {
    const double n = static_cast<double>(i + 1);
    chain.G[i] = shifted_inverse(g, i + 1);
    chain.H[i] = spec.apply([n](double x) { return 1.0 / ((1.0 + n * x) * (1.0 + (n - 1.0) * x)); });
    chain.sqrtH[i] = opcore::herm_sqrt(chain.H[i]);
  });
  return chain;
}

ComplexMatrix shifted_inverse(const ComplexMatrix& g, Index n) {
  const Index dim = g.rows();
  const ComplexMatrix shifted = g + ComplexMatrix::Identity(dim, dim) / static_cast<double>(n);
  Eigen::LLT<ComplexMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) throw NumericError("shifted_inverse: Cholesky failed");
  return llt.solve(ComplexMatrix::Identity(dim, dim));
}

double telescoping_residual(const ResolventChain& chain, const ComplexMatrix& g, Index n) {
  if (n < 1 || n > chain.levels()) throw DomainError("telescoping_residual: N outside chain");
  ComplexMatrix sum = ComplexMatrix::Zero(g.rows(), g.cols());
  for (Index i = 0; i < n; ++i) sum += chain.H[i];
  return opcore::op_norm(sum - shifted_inverse(g, n));
}

double isometry_defect(const ComplexMatrix& g, Index n) {
  return opcore::op_norm(g * shifted_inverse(g, n) * g - g);
}

double module_norm(const ComplexMatrix& g, const ComplexMatrix& v) {
  return std::sqrt(opcore::op_norm(v.adjoint() * g * v));
}

ComplexMatrix AbsorptionSystem::zeta(Index k) const {
  const auto [n, slot] = pairing.forward(k);
  return chain.sqrtH[n - 1].middleCols((slot - 1) * d(), d());
}

double AbsorptionSystem::kappa() const {
  if (!invertible()) return std::numeric_limits<double>::infinity();
  return lambda_max / lambda_min;
}

AbsorptionSystem build_isometry(const ModulePresentation& pres, Index levels, Execution ex) {
  AbsorptionSystem sys;
  sys.pres = pres;
  sys.N = levels;
  sys.G = gram(pres);
  sys.Dt = blockwise(pres.ctx->D0(), pres.J);
  sys.chain = resolvent_chain(sys.G.matrix, levels, ex);
  sys.pairing = pairing_index(levels, pres.J);
  const Index dim = sys.dim();
  sys.W.resize(levels * dim, dim);
  sys.Wstar.resize(dim, levels * dim);
  for (Index n = 1; n <= levels; ++n) {
    sys.W.middleRows((n - 1) * dim, dim) = sys.chain.sqrtH[n - 1] * sys.G.matrix;
    sys.Wstar.middleCols((n - 1) * dim, dim) = sys.chain.sqrtH[n - 1];
  }
  const auto spec = opcore::eigh(sys.G.matrix);
  sys.lambda_min = spec.min_eigenvalue();
  sys.lambda_max = spec.max_eigenvalue();
  return sys;
}

AbsorptionSystem truncate(const AbsorptionSystem& sys, Index levels) {
  if (levels < 1 || levels > sys.N) throw DomainError("truncate: level outside 1..N");
  AbsorptionSystem out;
  out.pres = sys.pres;
  out.N = levels;
  out.G = sys.G;
  out.Dt = sys.Dt;
  out.chain.G.assign(sys.chain.G.begin(), sys.chain.G.begin() + levels);
  out.chain.H.assign(sys.chain.H.begin(), sys.chain.H.begin() + levels);
  out.chain.sqrtH.assign(sys.chain.sqrtH.begin(), sys.chain.sqrtH.begin() + levels);
  out.pairing = pairing_index(levels, sys.J());
  out.W = sys.W.topRows(levels * sys.dim());
  out.Wstar = sys.Wstar.leftCols(levels * sys.dim());
  out.lambda_min = sys.lambda_min;
  out.lambda_max = sys.lambda_max;
  return out;
}

double frame_residual(const AbsorptionSystem& sys, const ComplexMatrix& eta) {
  ComplexMatrix recon = ComplexMatrix::Zero(eta.rows(), eta.cols());
  const Index count = sys.pairing.size();
  for (Index k = 1; k <= count; ++k) {
    const ComplexMatrix z = sys.zeta(k);
    recon += z * (z.adjoint() * sys.G.matrix * eta);
  }
  return module_norm(sys.G.matrix, recon - eta);
}

ComplexMatrix apply_K(const AbsorptionSystem& sys, const ComplexMatrix& x) {
  const Index dim = sys.dim();
  if (x.rows() % dim != 0) throw DomainError("apply_K: row count not a multiple of Jd");
  ComplexMatrix out(x.rows(), x.cols());
  for (Index n = 0; n < x.rows() / dim; ++n)
    out.middleRows(n * dim, dim) = sys.G.matrix * x.middleRows(n * dim, dim);
  return out;
}

namespace {

// stack of sqrt(H_n) for n = 1..levels: the matrix adjoint of W*.
ComplexMatrix root_stack(const AbsorptionSystem& sys, Index levels) {
  return sys.Wstar.leftCols(levels * sys.dim()).adjoint();
}

ComplexMatrix apply_blockwise(const ComplexMatrix& block, const ComplexMatrix& x) {
  const Index dim = block.rows();
  ComplexMatrix out(x.rows(), x.cols());
  for (Index n = 0; n < x.rows() / dim; ++n)
    out.middleRows(n * dim, dim) = block * x.middleRows(n * dim, dim);
  return out;
}

}  // namespace

KReport build_K(const AbsorptionSystem& sys) {
  const Index levels = sys.N;
  const Index dim = sys.dim();
  KReport rep;
  // KP - PK = [KW, -W] [W*^H, (W*K)^H]^H
  const ComplexMatrix r = root_stack(sys, levels);
  ComplexMatrix u(levels * dim, 2 * dim), v(levels * dim, 2 * dim);
  u << apply_K(sys, sys.W), -sys.W;
  v << r, apply_K(sys, r);
  rep.commutation = opcore::low_rank_norm(u, v);

  // W*KW in the selfadjoint form G^(1/2) (.) G^(-1/2): sum_n G^(1/2) sqrt(H_n) G sqrt(H_n) G^(1/2)
  const ComplexMatrix gh = opcore::herm_sqrt(sys.G.matrix);
  ComplexMatrix wkw = ComplexMatrix::Zero(dim, dim);
  for (Index n = 0; n < levels; ++n) {
    const ComplexMatrix t = sys.chain.sqrtH[n] * gh;
    wkw += t.adjoint() * sys.G.matrix * t;
  }
  rep.wkw_min = opcore::eigh(wkw).min_eigenvalue();
  rep.dense_image_certified = sys.invertible() && rep.wkw_min > 0.0;
  return rep;
}

std::vector<Index> decay_ladder(Index lo, Index hi, int per_octave) {
  if (lo < 1 || hi < lo || per_octave < 1) throw DomainError("decay_ladder: invalid range");
  std::vector<Index> out;
  const double octaves = std::log2(static_cast<double>(hi) / static_cast<double>(lo));
  const int steps = static_cast<int>(std::round(octaves * per_octave));
  for (int k = 0; k <= steps; ++k) {
    const auto n = static_cast<Index>(
        std::llround(static_cast<double>(lo) * std::exp2(static_cast<double>(k) / per_octave)));
    if (out.empty() || n > out.back()) out.push_back(std::min(n, hi));
  }
  return out;
}

DecayProfile decay_profile(const ComplexMatrix& g, const ComplexMatrix& dt,
                           const std::vector<Index>& ns, Execution ex,
                           const opcore::QuadratureSpec& quad) {
  if (ns.empty()) throw DomainError("decay_profile: empty n range");
  const Index dim = g.rows();
  const auto spec = opcore::eigh(g);
  const ComplexMatrix dg = commutator(dt, g);
  const ComplexMatrix g2 = g * g;
  const ComplexMatrix dgg = dg * g + g * dg;

  DecayProfile prof;
  prof.rows.resize(ns.size());
  kernels::for_each_index(static_cast<Index>(ns.size()), ex, [&](Index i) {
    const Index n = ns[i];
    if (n < 1) throw DomainError("decay_profile: n must be >= 1");
    const double a = static_cast<double>(n), b = static_cast<double>(n - 1);
    const ComplexMatrix A = spec.apply([a](double x) { return 1.0 / std::sqrt(1.0 + a * x); });
    const ComplexMatrix B = spec.apply([b](double x) { return 1.0 / std::sqrt(1.0 + b * x); });
    const ComplexMatrix dA_s = opcore::calc_derivative_spectral(spec, dg, opcore::ScalarFunction::inv_sqrt_shifted(a));
    const ComplexMatrix dA_i = opcore::inv_sqrt_derivative_integral(g, dg, a, quad);
    ComplexMatrix dB_s = ComplexMatrix::Zero(dim, dim), dB_i = ComplexMatrix::Zero(dim, dim);
    if (n > 1) {
      dB_s = opcore::calc_derivative_spectral(spec, dg, opcore::ScalarFunction::inv_sqrt_shifted(b));
      dB_i = opcore::inv_sqrt_derivative_integral(g, dg, b, quad);
    }
    const ComplexMatrix common = A * B * dgg;
    const ComplexMatrix xs = dA_s * B * g2 + A * dB_s * g2 + common;
    const ComplexMatrix xi = dA_i * B * g2 + A * dB_i * g2 + common;
    DecayRow& row = prof.rows[i];
    row.n = n;
    row.r_spectral = opcore::op_norm(xs);
    row.r_integral = opcore::op_norm(xi);
    row.engine_gap = opcore::op_norm(xs - xi);
  });

  for (const auto& row : prof.rows) prof.max_engine_gap = std::max(prof.max_engine_gap, row.engine_gap);
  prof.exact_zero = std::all_of(prof.rows.begin(), prof.rows.end(),
                                [](const DecayRow& r) { return r.r_spectral < 1e-14; });
  if (prof.exact_zero) return prof;

  const std::size_t start = prof.rows.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
  for (std::size_t i = start; i < prof.rows.size(); ++i) {
    const double x = std::log(static_cast<double>(prof.rows[i].n));
    const double y = std::log(prof.rows[i].r_spectral);
    sx += x, sy += y, sxx += x * x, sxy += x * y, count += 1;
  }
  prof.slope = count > 1 ? (count * sxy - sx * sy) / (count * sxx - sx * sx)
                         : std::numeric_limits<double>::quiet_NaN();
  const auto weighted = [](const DecayRow& r) {
    return r.r_spectral * std::pow(static_cast<double>(r.n), 0.8);
  };
  double top = 0.0;
  for (const auto& row : prof.rows) top = std::max(top, weighted(row));
  prof.bounded_ratio = top / weighted(prof.rows.front());
  return prof;
}

DecayProfile decay_profile(const AbsorptionSystem& sys, const std::vector<Index>& ns,
                           Execution ex) {
  return decay_profile(sys.G.matrix, sys.Dt, ns, ex);
}

TailReport diff_compact_tail(const AbsorptionSystem& sys, Index n1, Index n2) {
  if (!(1 <= n1 && n1 < n2 && n2 <= sys.N))
    throw DomainError("diff_compact_tail: need 1 <= N1 < N2 <= N");
  const Index dim = sys.dim();
  const ComplexMatrix& g = sys.G.matrix;
  // T_N = K^2 W_N W_N* = L R*, L = stack G^2 sqrt(H_n) G, R = stack sqrt(H_n)
  const ComplexMatrix r = root_stack(sys, n2);
  const ComplexMatrix l = apply_blockwise(g * g, sys.W.topRows(n2 * dim));
  ComplexMatrix l1 = l, r1 = r;
  l1.bottomRows((n2 - n1) * dim).setZero();
  r1.bottomRows((n2 - n1) * dim).setZero();
  const ComplexMatrix dl = apply_blockwise(sys.Dt, l), dr = apply_blockwise(sys.Dt, r);
  const ComplexMatrix dl1 = apply_blockwise(sys.Dt, l1), dr1 = apply_blockwise(sys.Dt, r1);

  TailReport rep;
  ComplexMatrix u(n2 * dim, 4 * dim), v(n2 * dim, 4 * dim);
  u << dl, -l, -dl1, l1;
  v << r, dr, r1, dr1;
  rep.tail = opcore::low_rank_norm(u, v);

  // per-level hooks: row n (all columns) and column n (rows <= N1)
  ComplexMatrix rv(n2 * dim, 2 * dim), lu(n2 * dim, 2 * dim);
  rv << r, dr;
  lu << dl1, -l1;
  const ComplexMatrix rv_r = opcore::qr_r_factor(rv);
  const ComplexMatrix lu_r = opcore::qr_r_factor(lu);
  for (Index n = n1 + 1; n <= n2; ++n) {
    const auto rows = l.middleRows((n - 1) * dim, dim);
    ComplexMatrix hook(dim, 2 * dim);
    hook << sys.Dt * rows, -rows;
    rep.bound += opcore::op_norm(hook * rv_r.adjoint());
    const auto col = r.middleRows((n - 1) * dim, dim);
    ComplexMatrix chook(dim, 2 * dim);
    chook << col, sys.Dt * col;
    rep.bound += opcore::op_norm(lu_r * chook.adjoint());
  }
  return rep;
}

}  // namespace absorbtk
