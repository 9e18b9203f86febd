#include <algorithm>
#include <cmath>

#include "absorbtk/errors.hpp"
#include "absorbtk/lift.hpp"

namespace absorbtk {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector vec(const ComplexMatrix& a) { return Eigen::Map<const ComplexVector>(a.data(), a.size()); }

}  // namespace

GnsSpace gns_space(const ComplexMatrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.size() == 0) throw InvalidStateError("gns: state must be square");
  const Complex tr = sigma.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12)
    throw InvalidStateError("gns: trace of state is " + std::to_string(tr.real()) + ", expected 1");
  if (opcore::hermiticity_residual(sigma) > 1e-12) throw InvalidStateError("gns: state not selfadjoint");
  const auto sspec = opcore::eigh(sigma);
  if (sspec.min_eigenvalue() < -1e-12) throw InvalidStateError("gns: state not positive");

  GnsSpace space;
  space.d = sigma.rows();
  space.sigma = sigma;
  // tr(sigma X* Y) = vec(X)* (sigma^T (x) I) vec(Y) in column-major vec
  space.gram = kron(sigma.transpose(), ComplexMatrix::Identity(space.d, space.d));
  const auto spec = opcore::eigh(space.gram);
  const double cut = 1e-12 * std::max(1.0, spec.max_eigenvalue());
  std::vector<Index> keep;
  for (Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues(i) > cut) keep.push_back(i);
  space.coords.resize(space.gram.rows(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    space.coords.col(static_cast<Index>(k)) =
        spec.eigenvectors.col(keep[k]) / std::sqrt(spec.eigenvalues(keep[k]));
  return space;
}

ComplexMatrix GnsSpace::rep(const ComplexMatrix& a) const {
  if (a.rows() != d || a.cols() != d) throw DomainError("gns rep: wrong shape");
  const ComplexMatrix left = kron(ComplexMatrix::Identity(d, d), a);
  return coords.adjoint() * gram * left * coords;
}

ComplexVector GnsSpace::cyclic() const {
  return coords.adjoint() * gram * vec(ComplexMatrix::Identity(d, d));
}

GnsReport gns_localize(const AlgebraContext& ctx, const ComplexMatrix& sigma,
                       const std::vector<ComplexMatrix>& ops) {
  if (sigma.rows() != ctx.d()) throw InvalidStateError("gns: state dimension does not match algebra");
  GnsReport rep{gns_space(sigma), {}, 0.0, 0.0};
  for (const auto& op : ops) rep.localized.push_back(rep.space.rep(op));
  const ComplexVector one = rep.space.cyclic();
  for (const auto& a : ctx.basis()) {
    const ComplexMatrix ra = rep.space.rep(a);
    rep.homomorphism_residual = std::max(rep.homomorphism_residual, opcore::op_norm(rep.space.rep(a.adjoint()) - ra.adjoint()));
    rep.state_residual = std::max(rep.state_residual, std::abs(one.dot(ra * one) - (sigma * a).trace()));
    for (const auto& b : ctx.basis())
      rep.homomorphism_residual =
          std::max(rep.homomorphism_residual, opcore::op_norm(rep.space.rep(a * b) - ra * rep.space.rep(b)));
  }
  return rep;
}

double localized_adjoint_residual(const GnsSpace& space, const ComplexMatrix& d, const ComplexMatrix& x) {
  const ComplexMatrix rdx = space.rep(d * x);
  return opcore::op_norm(rdx.adjoint() - (rdx - space.rep(commutator(d, x))));
}

}  // namespace absorbtk
