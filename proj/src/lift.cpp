#include "absorbtk/lift.hpp"

#include <algorithm>

#include "absorbtk/connection.hpp"
#include "absorbtk/errors.hpp"

namespace absorbtk {

namespace {

ComplexMatrix stack_apply(const ComplexMatrix& block, const ComplexMatrix& x) {
  const Index dim = block.rows();
  ComplexMatrix out(x.rows(), x.cols());
  for (Index n = 0; n < x.rows() / dim; ++n) out.middleRows(n * dim, dim) = block * x.middleRows(n * dim, dim);
  return out;
}

// sum_n X_n* B X_n over the level blocks X_n of Wt
ComplexMatrix level_sandwich(const LiftSystem& ls, const ComplexMatrix& b) {
  const Index dim = ls.sys->dim();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Index n = 0; n < ls.sys->N; ++n) {
    const auto x = ls.Wt.middleRows(n * dim, dim);
    out += x.adjoint() * b * x;
  }
  return out;
}

}  // namespace

LiftSystem make_lift_system(std::shared_ptr<const AbsorptionSystem> sys, std::optional<ComplexMatrix> d) {
  LiftSystem ls;
  ls.D = d ? *d : sys->pres.ctx->D0();
  if (ls.D.rows() != sys->d() || ls.D.cols() != sys->d())
    throw DomainError("make_lift_system: D must be d x d");
  if (opcore::hermiticity_residual(ls.D) > 1e-12) throw DomainError("make_lift_system: D not selfadjoint");
  ls.Dhat = blockwise(ls.D, sys->J());
  ls.Gh = opcore::herm_sqrt(sys->G.matrix);
  const Index dim = sys->dim();
  ls.Wt.resize(sys->N * dim, dim);
  for (Index n = 0; n < sys->N; ++n) ls.Wt.middleRows(n * dim, dim) = sys->chain.sqrtH[n] * ls.Gh;
  ls.sys = std::move(sys);
  const ComplexMatrix& g = ls.sys->G.matrix;
  ls.Delta = level_sandwich(ls, g * g);
  return ls;
}

ComplexMatrix lift_operator(const LiftSystem& ls) { return level_sandwich(ls, ls.Dhat); }

double projection_defect(const LiftSystem& ls) {
  const Index dim = ls.sys->dim();
  const ComplexMatrix gram = ls.Wt.adjoint() * ls.Wt - ComplexMatrix::Identity(dim, dim);
  return opcore::low_rank_norm(ls.Wt * gram, ls.Wt);
}

double lift_vs_connection(const LiftSystem& ls, const ComplexMatrix& xi, const ComplexVector& y) {
  if (y.size() != ls.sys->d()) throw DomainError("lift_vs_connection: y must have length d");
  const ComplexVector v = xi * y;
  const ComplexVector lifted = lift_operator(ls) * (ls.Gh * v);
  const ComplexMatrix grad = grassmann(*ls.sys, xi, ls.D).generator_form;
  const ComplexVector expected = ls.Gh * (grad * y + xi * (ls.D * y));
  return (lifted - expected).norm();
}

RegularizedLift regularized_lift(const LiftSystem& ls) {
  RegularizedLift out;
  out.matrix = ls.Delta * lift_operator(ls) * ls.Delta;
  out.hermiticity = opcore::hermiticity_residual(out.matrix);
  out.lambda_min_delta = opcore::eigh(ls.Delta).min_eigenvalue();

  // T = P K^2 = U V* with U = W, V = stack G^2 sqrt(H_m)
  const AbsorptionSystem& sys = *ls.sys;
  const ComplexMatrix& g = sys.G.matrix;
  const ComplexMatrix u = sys.W;
  const ComplexMatrix v = stack_apply(g * g, sys.Wstar.adjoint());
  const ComplexMatrix dd = ls.Dhat, d0 = sys.Dt;
  const Index dim = sys.dim();
  ComplexMatrix left(u.rows(), 4 * dim), right(v.rows(), 4 * dim);
  left << stack_apply(dd, u), -u, -stack_apply(d0, u), u;
  right << v, stack_apply(dd, v), v, stack_apply(d0, v);
  out.commutator_residual = opcore::low_rank_norm(left, right);
  return out;
}

double CompositionReport::worst() const { return std::max({adjoint, left, sandwich}); }

CompositionReport composition_identities(const ComplexMatrix& d, const ComplexMatrix& x) {
  if (d.rows() != d.cols() || x.rows() != x.cols() || d.rows() != x.rows())
    throw DomainError("composition_identities: D and x must be square of equal size");
  if (opcore::hermiticity_residual(d) > 1e-12 * (1.0 + opcore::op_norm(d)) ||
      opcore::hermiticity_residual(x) > 1e-12 * (1.0 + opcore::op_norm(x)))
    throw DomainError("composition_identities: inputs must be Hermitian");
  const ComplexMatrix dx = d * x;
  const ComplexMatrix delta = commutator(d, x);
  CompositionReport rep;
  rep.adjoint = opcore::op_norm(dx.adjoint() - (dx - delta));
  rep.left = opcore::op_norm(x * d - (dx - delta));
  rep.sandwich = opcore::op_norm(x * d * x - (d * x * x - delta * x));
  return rep;
}

}  // namespace absorbtk
