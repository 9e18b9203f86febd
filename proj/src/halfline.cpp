#include "absorbtk/halfline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#include "absorbtk/errors.hpp"
#include "absorbtk/kernels.hpp"

namespace absorbtk::halfline {

RealVector Grid::nodes() const {
  RealVector t(M);
  for (Index j = 0; j < M; ++j) t(j) = this->t(j + 1);
  return t;
}

Grid make_grid(double length, Index interior) {
  if (!(length > 0)) throw DomainError("grid: length must be positive");
  if (interior < 1) throw DomainError("grid: need at least one interior node");
  return {length, interior};
}

GridOperator build_dirac(const Grid& grid) {
  if (grid.M < 8) throw DomainError("build_dirac: grid too coarse (M < 8)");
  const Complex c(0.0, 1.0 / (2.0 * grid.h()));
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(2 * grid.M);
  for (Index j = 0; j < grid.M; ++j) {
    if (j + 1 < grid.M) entries.emplace_back(j, j + 1, c);
    if (j > 0) entries.emplace_back(j, j - 1, -c);
  }
  GridOperator op{grid, SparseMatrix(grid.M, grid.M), 1};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

double default_profile_sup() {
  const double t = std::sqrt((4.0 - std::sqrt(13.0)) / 3.0);
  const double s = 1.0 + t * t;
  return t * (1.0 - t * t) / (s * s * s);
}

double default_profile_scale() { return 1.0 / std::sqrt(0.25 + 2.0 * default_profile_sup()); }

Profile weight_profile(const Grid& grid, const ProfileSpec& spec) {
  Profile p;
  p.xi.resize(grid.M);
  p.dxi.resize(grid.M);
  const bool custom = static_cast<bool>(spec.value);
  if (custom && !spec.derivative) throw DomainError("weight_profile: custom profile needs a derivative");
  const double c = custom ? 1.0 : default_profile_scale();
  p.scale = c;
  for (Index j = 0; j < grid.M; ++j) {
    const double t = grid.t(j + 1);
    if (custom) {
      p.xi(j) = spec.value(t);
      p.dxi(j) = spec.derivative(t);
    } else {
      const double s = 1.0 + t * t;
      p.xi(j) = c * t / s;
      p.dxi(j) = c * (1.0 - t * t) / (s * s);
    }
    if (!(p.xi(j) > 0.0) || !std::isfinite(p.xi(j)))
      throw DomainError("weight_profile: invalid profile, vanishes at t = " + std::to_string(t));
  }
  return p;
}

namespace {

inline double level_weight(double x, double n) {
  const double x2 = x * x;
  return x / std::sqrt((1.0 + n * x2) * (1.0 + (n - 1.0) * x2));
}

void require_interior_support(const ComplexVector& g) {
  const Index m = g.size();
  const double scale = g.cwiseAbs().maxCoeff();
  for (Index k = 0; k < std::min<Index>(5, m); ++k)
    if (std::abs(g(k)) > 1e-14 * scale || std::abs(g(m - 1 - k)) > 1e-14 * scale)
      throw DomainError("halfline_lift_apply: domain violation, g supported within 5 nodes of the boundary");
}

}  // namespace

ComplexVector halfline_lift_apply(const Grid& grid, const Profile& profile, Index levels,
                                  const ComplexVector& g, Execution ex) {
  const Index m = grid.M;
  if (g.size() != m || profile.xi.size() != m) throw DomainError("halfline_lift_apply: size mismatch");
  if (levels < 1) throw DomainError("halfline_lift_apply: N must be >= 1");
  if (m < 11) throw DomainError("halfline_lift_apply: grid too coarse");
  require_interior_support(g);
  const Complex c(0.0, 1.0 / (2.0 * grid.h()));
  const RealVector& xi = profile.xi;
  ComplexVector out = ComplexVector::Zero(m);

  if (ex == Execution::Serial) {
    // reference: level by level, w_n d(w_n g)
    for (Index n = 1; n <= levels; ++n) {
      RealVector w(m);
      for (Index j = 0; j < m; ++j) w(j) = level_weight(xi(j), static_cast<double>(n));
      const ComplexVector wg = w.cast<Complex>().cwiseProduct(g);
      for (Index j = 0; j < m; ++j) {
        const Complex right = j + 1 < m ? wg(j + 1) : Complex(0.0);
        const Complex left = j > 0 ? wg(j - 1) : Complex(0.0);
        out(j) += w(j) * (c * (right - left));
      }
    }
    return out;
  }

  // node-parallel: each node sums its own levels, independent of the team size
  kernels::for_each_index(m, ex, [&](Index j) {
    const Complex gr = j + 1 < m ? g(j + 1) : Complex(0.0);
    const Complex gl = j > 0 ? g(j - 1) : Complex(0.0);
    if (gr == Complex(0.0) && gl == Complex(0.0)) return;
    const double xr = j + 1 < m ? xi(j + 1) : 0.0;
    const double xl = j > 0 ? xi(j - 1) : 0.0;
    Complex acc(0.0);
    for (Index n = 1; n <= levels; ++n) {
      const double nn = static_cast<double>(n);
      acc += level_weight(xi(j), nn) * (level_weight(xr, nn) * gr - level_weight(xl, nn) * gl);
    }
    out(j) = c * acc;
  });
  return out;
}

RealVector lift_weight_sum(const Profile& profile, Index levels) {
  RealVector out = RealVector::Zero(profile.xi.size());
  for (Index n = 1; n <= levels; ++n)
    for (Index j = 0; j < out.size(); ++j) {
      const double w = level_weight(profile.xi(j), static_cast<double>(n));
      out(j) += w * w;
    }
  return out;
}

double range_defect(const GridOperator& op, Sign sign, const ComplexVector& u) {
  const Index m = op.grid.M;
  if (u.size() != m) throw DomainError("range_defect: probe has wrong length");
  const double unorm = u.norm();
  if (!(unorm > 0)) throw DomainError("range_defect: probe must be nonzero");
  const Index first = op.margin, count = m - 2 * op.margin;
  SparseMatrix shifted = op.matrix;
  const Complex s(0.0, sign == Sign::Plus ? 1.0 : -1.0);
  SparseMatrix id(m, m);
  id.setIdentity();
  shifted += s * id;
  const SparseMatrix b = shifted.middleCols(first, count);
  const SparseMatrix normal = SparseMatrix(b.adjoint()) * b;
  Eigen::SimplicialLDLT<SparseMatrix> solver(normal);
  if (solver.info() != Eigen::Success)
    throw NumericError("range_defect: normal equations singular (factorization failed)");
  const ComplexVector rhs = b.adjoint() * u;
  const ComplexVector g = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw NumericError("range_defect: solve failed");
  const double diag_min = solver.vectorD().real().minCoeff();
  if (!(diag_min > 0.0))
    throw NumericError("range_defect: normal matrix not positive, pivot " + std::to_string(diag_min));
  return (b * g - u).norm() / unorm;
}

RealVector regularizer_weights(const Profile& profile, Index levels) {
  const RealVector x2 = profile.xi.cwiseAbs2();
  if (levels == 0) return x2.cwiseAbs2();
  const double inv = 1.0 / static_cast<double>(levels);
  RealVector out(x2.size());
  for (Index j = 0; j < x2.size(); ++j) out(j) = x2(j) * x2(j) * x2(j) / (x2(j) + inv);
  return out;
}

GridOperator regularize(const GridOperator& op, const RealVector& delta) {
  if (delta.size() != op.grid.M) throw DomainError("regularize: weight length mismatch");
  GridOperator out = op;
  const Eigen::DiagonalMatrix<Complex, Eigen::Dynamic> dm(delta.cast<Complex>());
  out.matrix = dm * op.matrix * dm;
  return out;
}

double symmetry_residual(const GridOperator& op) {
  const SparseMatrix diff = op.matrix - SparseMatrix(op.matrix.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

std::vector<ContrastRow> regularization_contrast(double length, const std::vector<Index>& ladder,
                                                 Execution ex) {
  std::vector<ContrastRow> rows(ladder.size());
  kernels::for_each_index(static_cast<Index>(ladder.size()), ex, [&](Index i) {
    const Grid grid = make_grid(length, ladder[i] - 1);
    const GridOperator d = build_dirac(grid);
    const Profile prof = weight_profile(grid);
    const GridOperator reg = regularize(d, regularizer_weights(prof));
    const RealVector t = grid.nodes();
    const ComplexVector u = (-t.array()).exp().matrix().cast<Complex>();
    ContrastRow& row = rows[i];
    row.P = ladder[i];
    row.h = grid.h();
    row.minus = range_defect(d, Sign::Minus, u);
    row.plus = range_defect(d, Sign::Plus, u);
    row.minus_reg = range_defect(reg, Sign::Minus, u);
    row.plus_reg = range_defect(reg, Sign::Plus, u);
    row.reg_symmetry = symmetry_residual(reg);
  });
  return rows;
}

double bump(double t, double a, double b) {
  if (t <= a || t >= b) return 0.0;
  return std::exp(-4.0 / ((t - a) * (b - t)));
}

double bump_derivative(double t, double a, double b) {
  if (t <= a || t >= b) return 0.0;
  const double q = (t - a) * (b - t);
  return bump(t, a, b) * 4.0 * (a + b - 2.0 * t) / (q * q);
}

double lift_apply_error(double length, Index P, Index levels, Execution ex) {
  const Grid grid = make_grid(length, P - 1);
  const Profile prof = weight_profile(grid);
  ComplexVector g(grid.M), target(grid.M);
  for (Index j = 0; j < grid.M; ++j) {
    const double t = grid.t(j + 1);
    g(j) = bump(t);
    target(j) = Complex(0.0, bump_derivative(t));
  }
  const ComplexVector out = halfline_lift_apply(grid, prof, levels, g, ex);
  return (out - target).norm() / target.norm();
}

}  // namespace absorbtk::halfline
