#pragma once

#include <functional>
#include <limits>

#include "absorbtk/types.hpp"

namespace absorbtk::opcore {

/// Eigen-pairs of a Hermitian matrix, eigenvalues ascending, eigenvectors as
/// the columns of a unitary matrix.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  /// U diag(f(lambda)) U*.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
  ComplexMatrix reconstruct() const;
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// A real scalar function on an interval, together with its derivative.
struct ScalarFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static ScalarFunction identity();
  static ScalarFunction sqrt();
  /// lambda -> (1 + n lambda)^(-1/2), defined for lambda > -1/n.
  static ScalarFunction inv_sqrt_shifted(double n);
};

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Largest singular value. Throws DomainError on an empty matrix.
double op_norm(const ComplexMatrix& m);

/// ||U V*|| for tall factors U, V with the same column count, without
/// forming the product.
double low_rank_norm(const ComplexMatrix& u, const ComplexMatrix& v);

/// Upper-triangular factor R of a thin QR of `a` (min(rows, cols) x cols), so
/// that ||A B*|| = ||R_A R_B*||.
ComplexMatrix qr_r_factor(const ComplexMatrix& a);

/// ||M - M*||.
double hermiticity_residual(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

SpectralDecomposition eigh(const ComplexMatrix& m);

/// Positive square root. Eigenvalues in [-1e-12 ||M||, 0) are clamped to zero;
/// anything more negative throws NotPositiveError.
ComplexMatrix herm_sqrt(const ComplexMatrix& m);

/// Daleckii-Krein derivative of f at G in direction dG: in the eigenbasis of G
/// entry (i, j) is the divided difference of f times (dG)_ij.
ComplexMatrix calc_derivative_spectral(const ComplexMatrix& g, const ComplexMatrix& dg,
                                       const ScalarFunction& f);
ComplexMatrix calc_derivative_spectral(const SpectralDecomposition& spec,
                                       const ComplexMatrix& dg, const ScalarFunction& f);

struct QuadratureSpec {
  int initial_nodes = 16;
  int max_nodes = 8192;
  double tolerance = 1e-10;
};

/// -(n/pi) int_0^inf lambda^(-1/2) (1+lambda+nG)^(-1) dG (1+lambda+nG)^(-1) dlambda,
/// i.e. the derivative of (1 + nG)^(-1/2) in direction dG, via lambda = tan^2(theta)
/// and Gauss-Legendre with doubling. Resolvents are LU solves, never eigenvectors.
ComplexMatrix inv_sqrt_derivative_integral(const ComplexMatrix& g, const ComplexMatrix& dg,
                                           double n, const QuadratureSpec& quad = {});

}  // namespace absorbtk::opcore
