#include "absorbtk/connection.hpp"

#include <algorithm>
#include <random>

#include "absorbtk/errors.hpp"

namespace absorbtk {

double OmegaAlgebra::closure_residual() const {
  double worst = 0.0;
  for (Index i = 0; i < span.dimension(); ++i) {
    const ComplexMatrix a = span.element(i);
    worst = std::max(worst, span.residual(a.adjoint()));
    for (Index j = 0; j < span.dimension(); ++j)
      worst = std::max(worst, span.residual(a * span.element(j)));
  }
  return worst;
}

OmegaAlgebra omega_algebra(const AlgebraContext& ctx) {
  OmegaAlgebra omega{SpanBasis(ctx.d())};
  for (Index k = 0; k < ctx.span().dimension(); ++k) {
    const ComplexMatrix a = ctx.span().element(k);
    omega.span.add(a);
    omega.span.add(commutator(ctx.D0(), a));
  }
  const Index cap = ctx.d() * ctx.d();
  for (Index iter = 0; iter < cap; ++iter) {
    const Index before = omega.span.dimension();
    std::vector<ComplexMatrix> elems;
    for (Index k = 0; k < before; ++k) elems.push_back(omega.span.element(k));
    for (const auto& a : elems) {
      omega.span.add(a.adjoint());
      for (const auto& b : elems) omega.span.add(a * b);
    }
    if (omega.span.dimension() == before || omega.span.dimension() == cap) break;
  }
  return omega;
}

namespace {

void require_blocks_in_algebra(const AbsorptionSystem& sys, const ComplexMatrix& x, const char* what) {
  const Index d = sys.d();
  for (Index k = 0; k < x.rows() / d; ++k) {
    const double r = sys.pres.ctx->membership_residual(x.middleRows(k * d, d));
    if (r > kMembershipThreshold)
      throw NotInAlgebraError(std::string(what) + ": block " + std::to_string(k + 1) +
                                  " not-in-algebra, residual " + std::to_string(r),
                              r);
  }
}

}  // namespace

ComplexMatrix smooth_sample(const AbsorptionSystem& sys, const ComplexMatrix& x) {
  if (x.rows() != sys.N * sys.dim() || x.cols() != sys.d())
    throw DomainError("smooth_sample: x must be NJd x d");
  require_blocks_in_algebra(sys, x, "smooth_sample");
  const ComplexMatrix g2 = sys.G.matrix * sys.G.matrix;
  ComplexMatrix xi = ComplexMatrix::Zero(sys.dim(), sys.d());
  for (Index n = 0; n < sys.N; ++n)
    xi += sys.chain.sqrtH[n] * (g2 * x.middleRows(n * sys.dim(), sys.dim()));
  return xi;
}

ComplexMatrix random_smooth_sample(const AbsorptionSystem& sys, std::uint64_t seed, Index support) {
  std::mt19937_64 rng(seed);
  ComplexMatrix x = ComplexMatrix::Zero(sys.N * sys.dim(), sys.d());
  const Index levels = std::min(sys.N, support);
  for (Index k = 0; k < levels * sys.J(); ++k)
    x.middleRows(k * sys.d(), sys.d()) = random_element(*sys.pres.ctx, rng);
  return smooth_sample(sys, x);
}

ConnectionValue grassmann(const AbsorptionSystem& sys, const ComplexMatrix& xi,
                          const ComplexMatrix& d0) {
  if (xi.rows() != sys.dim() || xi.cols() != sys.d())
    throw DomainError("grassmann: xi must be Jd x d");
  const ComplexMatrix wx = sys.W * xi;
  require_blocks_in_algebra(sys, wx, "grassmann");
  const Index d = sys.d();
  const Index count = sys.pairing.size();
  ConnectionValue out;
  out.slots.resize(count);
  ComplexMatrix stacked(count * d, d);
  for (Index k = 0; k < count; ++k) {
    out.slots[k] = commutator(d0, wx.middleRows(k * d, d));
    stacked.middleRows(k * d, d) = out.slots[k];
  }
  out.generator_form = sys.Wstar * stacked;
  return out;
}

ConnectionValue grassmann(const AbsorptionSystem& sys, const ComplexMatrix& xi) {
  return grassmann(sys, xi, sys.pres.ctx->D0());
}

ComplexMatrix grassmann_alternate(const AbsorptionSystem& sys, const ComplexMatrix& xi) {
  const ComplexMatrix gxi = sys.G.matrix * xi;
  ComplexMatrix out = ComplexMatrix::Zero(sys.dim(), sys.d());
  for (Index k = 1; k <= sys.pairing.size(); ++k) {
    const ComplexMatrix z = sys.zeta(k);
    out += z * derive(*sys.pres.ctx, z.adjoint() * gxi);
  }
  return out;
}

ComplexMatrix apply_pairing(const AbsorptionSystem& sys, const ComplexMatrix& eta,
                            const ConnectionValue& value) {
  const ComplexMatrix eg = eta.adjoint() * sys.G.matrix;
  ComplexMatrix out = ComplexMatrix::Zero(sys.d(), sys.d());
  for (Index k = 1; k <= sys.pairing.size(); ++k)
    out += (eg * sys.zeta(k)) * value.slots[k - 1];
  return out;
}

double leibniz_residual(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& a) {
  const ComplexMatrix da = derive(*sys.pres.ctx, a);
  const ComplexMatrix lhs = grassmann(sys, xi * a).generator_form;
  const ComplexMatrix rhs = grassmann(sys, xi).generator_form * a + xi * da;
  return module_norm(sys.G.matrix, lhs - rhs);
}

double leibniz_bound(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& a) {
  return 2.0 * sys.dfct() * module_norm(sys.G.matrix, xi) * delta_norm(*sys.pres.ctx, a) * sys.kappa();
}

double hermitian_residual(const AbsorptionSystem& sys, const ComplexMatrix& xi,
                          const ComplexMatrix& eta) {
  const ComplexMatrix inner = xi.adjoint() * sys.G.matrix * eta;
  const ComplexMatrix lhs = derive(*sys.pres.ctx, inner);
  const ComplexMatrix t_xi = apply_pairing(sys, xi, grassmann(sys, eta));
  const ComplexMatrix t_eta = apply_pairing(sys, eta, grassmann(sys, xi));
  return opcore::op_norm(lhs - t_xi + t_eta.adjoint());
}

double hermitian_bound(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& eta) {
  return 2.0 * sys.dfct() * module_norm(sys.G.matrix, xi) * module_norm(sys.G.matrix, eta) *
         sys.kappa();
}

}  // namespace absorbtk
