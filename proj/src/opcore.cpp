#include "absorbtk/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "absorbtk/errors.hpp"
#include "absorbtk/quadrature.hpp"

namespace absorbtk::opcore {

ComplexMatrix SpectralDecomposition::apply(const std::function<double(double)>& f) const {
  RealVector values(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) values(i) = f(eigenvalues(i));
  return eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return apply([](double x) { return x; });
}

ScalarFunction ScalarFunction::identity() {
  return {[](double x) { return x; }, [](double) { return 1.0; }};
}

ScalarFunction ScalarFunction::sqrt() {
  return {[](double x) { return std::sqrt(x); }, [](double x) { return 0.5 / std::sqrt(x); }, 0.0};
}

ScalarFunction ScalarFunction::inv_sqrt_shifted(double n) {
  ScalarFunction f{[n](double x) { return 1.0 / std::sqrt(1.0 + n * x); },
                   [n](double x) { return -0.5 * n * std::pow(1.0 + n * x, -1.5); }};
  if (n > 0) f.lower = -1.0 / n;
  return f;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

double op_norm(const ComplexMatrix& m) {
  if (m.size() == 0) throw DomainError("op_norm: empty matrix");
  // sigma_max^2 is the top eigenvalue of the smaller Gram matrix
  ComplexMatrix gram = m.rows() >= m.cols() ? ComplexMatrix(m.adjoint() * m)
                                            : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

ComplexMatrix qr_r_factor(const ComplexMatrix& a) {
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  const Index k = std::min(a.rows(), a.cols());
  ComplexMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return r;
}

double low_rank_norm(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.cols() != v.cols()) throw DomainError("low_rank_norm: factor column counts differ");
  if (u.size() == 0 || v.size() == 0) return 0.0;
  return op_norm(qr_r_factor(u) * qr_r_factor(v).adjoint());
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("hermiticity_residual: matrix is not square");
  return op_norm(m - m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

SpectralDecomposition eigh(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.size() == 0)
    throw DomainError("eigh: expected a non-empty square matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw NumericError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix herm_sqrt(const ComplexMatrix& m) {
  const SpectralDecomposition spec = eigh(m);
  const double scale = spec.eigenvalues.cwiseAbs().maxCoeff();
  const double floor = -1e-12 * scale;
  if (spec.min_eigenvalue() < floor) {
    throw NotPositiveError("herm_sqrt: eigenvalue " + std::to_string(spec.min_eigenvalue()) +
                               " below clamp threshold",
                           spec.min_eigenvalue());
  }
  return spec.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

ComplexMatrix calc_derivative_spectral(const SpectralDecomposition& spec,
                                       const ComplexMatrix& dg, const ScalarFunction& f) {
  const Index dim = spec.eigenvalues.size();
  if (dg.rows() != dim || dg.cols() != dim)
    throw DomainError("calc_derivative_spectral: direction has wrong shape");
  const RealVector& lam = spec.eigenvalues;
  RealVector values(dim);
  for (Index i = 0; i < dim; ++i) {
    if (lam(i) < f.lower || lam(i) > f.upper)
      throw DomainError("calc_derivative_spectral: eigenvalue " + std::to_string(lam(i)) +
                        " outside the domain of f");
    values(i) = f.value(lam(i));
    if (!std::isfinite(values(i)))
      throw DomainError("calc_derivative_spectral: f undefined at eigenvalue " +
                        std::to_string(lam(i)));
  }
  const double norm = lam.cwiseAbs().maxCoeff();
  const double degenerate = 1e-10 * (1.0 + norm);

  ComplexMatrix rotated = spec.eigenvectors.adjoint() * dg * spec.eigenvectors;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const double gap = lam(i) - lam(j);
      double kernel;
      if (std::abs(gap) <= degenerate) {
        kernel = f.derivative(0.5 * (lam(i) + lam(j)));
        if (!std::isfinite(kernel))
          throw DomainError("calc_derivative_spectral: f' undefined near eigenvalue " +
                            std::to_string(lam(i)));
      } else {
        kernel = (values(i) - values(j)) / gap;
      }
      rotated(i, j) *= kernel;
    }
  }
  return spec.eigenvectors * rotated * spec.eigenvectors.adjoint();
}

ComplexMatrix calc_derivative_spectral(const ComplexMatrix& g, const ComplexMatrix& dg,
                                       const ScalarFunction& f) {
  return calc_derivative_spectral(eigh(g), dg, f);
}

namespace {

ComplexMatrix integrate_inv_sqrt_derivative(const ComplexMatrix& g, const ComplexMatrix& dg,
                                            double n, int nodes) {
  const Index dim = g.rows();
  const auto rule = quadrature::gauss_legendre(nodes, 0.0, 0.5 * std::numbers::pi);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double c = std::cos(rule.nodes[q]);
    const double c2 = c * c;
    // (1 + lambda + nG)^(-1) = cos^2(theta) (1 + n cos^2(theta) G)^(-1)
    Eigen::PartialPivLU<ComplexMatrix> lu(id + (n * c2) * g);
    const ComplexMatrix left = lu.solve(dg);
    const ComplexMatrix both = lu.solve(left.adjoint()).adjoint();
    sum += (rule.weights[q] * 2.0 * c2) * both;
  }
  return (-n / std::numbers::pi) * sum;
}

}  // namespace

ComplexMatrix inv_sqrt_derivative_integral(const ComplexMatrix& g, const ComplexMatrix& dg,
                                           double n, const QuadratureSpec& quad) {
  if (g.rows() != g.cols() || g.size() == 0)
    throw DomainError("inv_sqrt_derivative_integral: G must be square and non-empty");
  if (dg.rows() != g.rows() || dg.cols() != g.cols())
    throw DomainError("inv_sqrt_derivative_integral: direction has wrong shape");
  if (!(n > 0)) throw DomainError("inv_sqrt_derivative_integral: n must be positive");
  if (dg.isZero(0.0)) return ComplexMatrix::Zero(g.rows(), g.cols());

  int nodes = quad.initial_nodes;
  ComplexMatrix previous = integrate_inv_sqrt_derivative(g, dg, n, nodes);
  double last_gap = 0.0;
  while (nodes * 2 <= quad.max_nodes) {
    nodes *= 2;
    ComplexMatrix current = integrate_inv_sqrt_derivative(g, dg, n, nodes);
    last_gap = op_norm(current - previous);
    if (last_gap < quad.tolerance) return current;
    previous = std::move(current);
  }
  throw ConvergenceError("inv_sqrt_derivative_integral: refinement did not converge (gap " +
                             std::to_string(last_gap) + ")",
                         op_norm(previous), op_norm(previous) + last_gap);
}

}  // namespace absorbtk::opcore
