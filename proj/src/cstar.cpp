#include "absorbtk/cstar.hpp"

#include <algorithm>

#include "absorbtk/errors.hpp"
#include "absorbtk/opcore.hpp"

namespace absorbtk {

namespace {

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

}  // namespace

SpanBasis::SpanBasis(Index d) : d_(d), q_(d * d, 0) {}

bool SpanBasis::add(const ComplexMatrix& a, double tol) {
  if (a.rows() != d_ || a.cols() != d_) throw DomainError("SpanBasis::add: wrong shape");
  ComplexVector v = vec(a);
  const double scale = std::max(1.0, v.norm());
  // two passes of classical Gram-Schmidt
  for (int pass = 0; pass < 2; ++pass) v -= q_ * (q_.adjoint() * v);
  const double r = v.norm();
  if (r <= tol * scale) return false;
  q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
  q_.col(q_.cols() - 1) = v / r;
  return true;
}

double SpanBasis::residual(const ComplexMatrix& a) const {
  if (a.rows() != d_ || a.cols() != d_) throw DomainError("SpanBasis::residual: wrong shape");
  const ComplexVector v = vec(a);
  return (v - q_ * (q_.adjoint() * v)).norm();
}

ComplexMatrix SpanBasis::project(const ComplexMatrix& a) const {
  const ComplexVector p = q_ * (q_.adjoint() * vec(a));
  return Eigen::Map<const ComplexMatrix>(p.data(), d_, d_);
}

ComplexMatrix SpanBasis::element(Index k) const {
  return Eigen::Map<const ComplexMatrix>(q_.col(k).data(), d_, d_);
}

AlgebraContext::AlgebraContext(std::string name, std::vector<ComplexMatrix> basis,
                               ComplexMatrix d0)
    : name_(std::move(name)), d_(d0.rows()), basis_(std::move(basis)), d0_(std::move(d0)),
      span_(d_) {
  if (d_ < 1 || d0_.cols() != d_) throw InvariantError("D0 not square", name_);
  if (basis_.empty()) throw InvariantError("empty basis", name_);
  for (const auto& b : basis_) {
    if (b.rows() != d_ || b.cols() != d_) throw InvariantError("basis shape mismatch", name_);
  }
  const double herm = opcore::hermiticity_residual(d0_);
  if (herm > 1e-12)
    throw InvariantError("D0 not selfadjoint", "||D0 - D0*|| = " + std::to_string(herm));
  for (const auto& b : basis_) span_.add(b);
  const double closure = closure_residual();
  if (closure > 1e-10)
    throw InvariantError("basis not closed under adjoint and product",
                         "residual " + std::to_string(closure));
}

double AlgebraContext::closure_residual() const {
  double worst = 0.0;
  const Index r = span_.dimension();
  std::vector<ComplexMatrix> elems;
  elems.reserve(r);
  for (Index k = 0; k < r; ++k) elems.push_back(span_.element(k));
  for (Index i = 0; i < r; ++i) {
    worst = std::max(worst, span_.residual(elems[i].adjoint()));
    for (Index j = 0; j < r; ++j) worst = std::max(worst, span_.residual(elems[i] * elems[j]));
  }
  return worst;
}

bool AlgebraContext::derivation_vanishes() const {
  for (Index k = 0; k < span_.dimension(); ++k) {
    if (opcore::op_norm(commutator(d0_, span_.element(k))) > 1e-14) return false;
  }
  return true;
}

ComplexMatrix commutator(const ComplexMatrix& d, const ComplexMatrix& a) {
  return d * a - a * d;
}

ComplexMatrix derive(const AlgebraContext& ctx, const ComplexMatrix& a) {
  const double r = ctx.membership_residual(a);
  if (r > kMembershipThreshold)
    throw NotInAlgebraError("not-in-algebra: membership residual " + std::to_string(r), r);
  return commutator(ctx.D0(), a);
}

double delta_norm(const AlgebraContext& ctx, const ComplexMatrix& a) {
  return opcore::op_norm(a) + opcore::op_norm(derive(ctx, a));
}

ComplexMatrix blockwise(const ComplexMatrix& d0, Index copies) {
  const Index d = d0.rows();
  ComplexMatrix out = ComplexMatrix::Zero(copies * d, copies * d);
  for (Index j = 0; j < copies; ++j) out.block(j * d, j * d, d, d) = d0;
  return out;
}

}  // namespace absorbtk
