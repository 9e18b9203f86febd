#pragma once

#include <string>
#include <vector>

#include "absorbtk/types.hpp"

namespace absorbtk {

/// Orthonormal (Frobenius) basis of a linear subspace of M_d, grown by
/// Gram-Schmidt. Used both for the dense subalgebra and for the form algebra.
class SpanBasis {
 public:
  explicit SpanBasis(Index d = 1);

  /// Adds `a` if its residual exceeds `tol * max(1, ||a||_F)`. Returns true if added.
  bool add(const ComplexMatrix& a, double tol = 1e-10);
  /// Frobenius distance from `a` to the span.
  double residual(const ComplexMatrix& a) const;
  ComplexMatrix project(const ComplexMatrix& a) const;

  Index d() const { return d_; }
  Index dimension() const { return q_.cols(); }
  /// k-th orthonormal element reshaped to d x d.
  ComplexMatrix element(Index k) const;

 private:
  Index d_;
  ComplexMatrix q_;  // d^2 x r, orthonormal columns
};

/// A *-subalgebra of M_d with the commutator derivation [D0, .].
class AlgebraContext {
 public:
  /// Validates: D0 selfadjoint, basis closed under adjoint and product.
  /// Throws InvariantError naming the broken invariant.
  AlgebraContext(std::string name, std::vector<ComplexMatrix> basis, ComplexMatrix d0);

  const std::string& name() const { return name_; }
  Index d() const { return d_; }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& D0() const { return d0_; }
  const SpanBasis& span() const { return span_; }
  Index dimension() const { return span_.dimension(); }

  double membership_residual(const ComplexMatrix& a) const { return span_.residual(a); }
  /// Max membership residual of adjoints and pairwise products of the span.
  double closure_residual() const;
  /// True when [D0, a] = 0 on the whole algebra.
  bool derivation_vanishes() const;

 private:
  std::string name_;
  Index d_;
  std::vector<ComplexMatrix> basis_;
  ComplexMatrix d0_;
  SpanBasis span_;
};

inline constexpr double kMembershipThreshold = 1e-8;

ComplexMatrix commutator(const ComplexMatrix& d, const ComplexMatrix& a);

/// delta(a) = D0 a - a D0. Throws NotInAlgebraError if a is not in the algebra.
ComplexMatrix derive(const AlgebraContext& ctx, const ComplexMatrix& a);

/// ||a|| + ||delta(a)||.
double delta_norm(const AlgebraContext& ctx, const ComplexMatrix& a);

/// I_J (x) D0: the derivation generator acting blockwise on J stacked copies.
ComplexMatrix blockwise(const ComplexMatrix& d0, Index copies);

}  // namespace absorbtk
