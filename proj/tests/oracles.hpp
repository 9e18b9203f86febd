#pragma once

// Test-only reference computations, deliberately independent of the library paths.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "absorbtk/types.hpp"

namespace oracle {

using absorbtk::Complex;
using absorbtk::ComplexMatrix;
using absorbtk::Index;

inline double svd_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline ComplexMatrix herm_fun(const ComplexMatrix& g, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (g + g.adjoint()));
  Eigen::VectorXd v = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline ComplexMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = Complex(n(rng), n(rng));
  return a;
}

inline ComplexMatrix random_hermitian(Index k, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(k, k, rng);
  return 0.5 * (a + a.adjoint());
}

/// PSD with spectrum inside [lo, hi].
inline ComplexMatrix random_psd(Index k, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(k, k, rng));
  const ComplexMatrix q = qr.householderQ();
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(k);
  for (Index i = 0; i < k; ++i) v(i) = u(rng);
  return q * v.cast<Complex>().asDiagonal() * q.adjoint();
}

inline ComplexMatrix unit(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace oracle
