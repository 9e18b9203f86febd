#pragma once

#include <cstdint>
#include <vector>

#include "absorbtk/absorb.hpp"
#include "absorbtk/cstar.hpp"

namespace absorbtk {

/// The *-algebra generated by the algebra and its derivatives.
struct OmegaAlgebra {
  SpanBasis span;
  Index dimension() const { return span.dimension(); }
  double membership_residual(const ComplexMatrix& a) const { return span.residual(a); }
  double closure_residual() const;
};

OmegaAlgebra omega_algebra(const AlgebraContext& ctx);

/// Frame slots delta(<zeta_k, xi>), k = 1..NJ, and their image under W*
/// (the value in generator coordinates, a Jd x d stack).
struct ConnectionValue {
  std::vector<ComplexMatrix> slots;
  ComplexMatrix generator_form;
};

/// xi = W* K^2 x for x a stacked NJd x d block vector with blocks in the algebra.
ComplexMatrix smooth_sample(const AbsorptionSystem& sys, const ComplexMatrix& x);

/// Random element of the algebra: a normal-distributed combination of its basis.
template <class Rng>
ComplexMatrix random_element(const AlgebraContext& ctx, Rng& rng);

/// smooth_sample of a random x supported on levels 1..min(N, support), so the
/// sample does not depend on N beyond that.
ComplexMatrix random_smooth_sample(const AbsorptionSystem& sys, std::uint64_t seed,
                                   Index support = 4);

/// Graßmann connection for delta = [D0, .].
ConnectionValue grassmann(const AbsorptionSystem& sys, const ComplexMatrix& xi);
/// Same for the derivation [d, .].
ConnectionValue grassmann(const AbsorptionSystem& sys, const ComplexMatrix& xi,
                          const ComplexMatrix& d);
/// Alternate order: sum_k zeta_k delta(<zeta_k, xi>) with each pairing formed separately.
ComplexMatrix grassmann_alternate(const AbsorptionSystem& sys, const ComplexMatrix& xi);

/// sum_k <eta, zeta_k> omega_k.
ComplexMatrix apply_pairing(const AbsorptionSystem& sys, const ComplexMatrix& eta,
                            const ConnectionValue& value);

/// Norm of grad(xi a) - grad(xi) a - xi (x) delta(a) in the module norm.
double leibniz_residual(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& a);
/// 2 dfct(N) ||xi|| ||a||_delta kappa(G).
double leibniz_bound(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& a);

/// ||delta(<xi, eta>) - T_xi* grad(eta) + (T_eta* grad(xi))*||.
double hermitian_residual(const AbsorptionSystem& sys, const ComplexMatrix& xi,
                          const ComplexMatrix& eta);
/// 2 dfct(N) ||xi|| ||eta|| kappa(G).
double hermitian_bound(const AbsorptionSystem& sys, const ComplexMatrix& xi, const ComplexMatrix& eta);

}  // namespace absorbtk

#include <random>

template <class Rng>
absorbtk::ComplexMatrix absorbtk::random_element(const AlgebraContext& ctx, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix out = ComplexMatrix::Zero(ctx.d(), ctx.d());
  for (const auto& b : ctx.basis()) {
    const double re = normal(rng);
    const double im = normal(rng);
    out += Complex(re, im) * b;
  }
  return out;
}
