#pragma once

#include <functional>
#include <vector>

#include <Eigen/SparseCore>

#include "absorbtk/types.hpp"

namespace absorbtk::halfline {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Nodes t_j = j h, j = 1..M, h = L/(M+1).
struct Grid {
  double L = 0.0;
  Index M = 0;
  double h() const { return L / static_cast<double>(M + 1); }
  double t(Index j) const { return static_cast<double>(j) * h(); }  // j 1-based
  RealVector nodes() const;
};

Grid make_grid(double length, Index interior);

/// Operator on C^M; the minimal domain is grid functions vanishing at the
/// first and last node (columns 2..M-1).
struct GridOperator {
  Grid grid;
  SparseMatrix matrix;
  Index margin = 1;
};

/// (d g)_j = i (g_{j+1} - g_{j-1}) / (2h), g_0 = g_{M+1} = 0. Throws DomainError if M < 8.
GridOperator build_dirac(const Grid& grid);

struct ProfileSpec {
  /// Empty: the default c t/(1+t^2) with c fixed by the normalization.
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct Profile {
  RealVector xi;
  RealVector dxi;
  double scale = 1.0;  // c for the default profile
};

/// sup |t(1-t^2)/(1+t^2)^3|, attained at t^2 = (4 - sqrt(13))/3.
double default_profile_sup();
/// c with c^2 (1/4 + 2 sup|t(1-t^2)/(1+t^2)^3|) = 1.
double default_profile_scale();

/// Throws DomainError if the profile vanishes at a node.
Profile weight_profile(const Grid& grid, const ProfileSpec& spec = {});

/// sum_{n<=N} w_n d(w_n g), w_n = xi/sqrt((1+n xi^2)(1+(n-1) xi^2)). g must vanish
/// on the first and last 5 nodes (DomainError otherwise).
ComplexVector halfline_lift_apply(const Grid& grid, const Profile& profile, Index levels,
                                  const ComplexVector& g, Execution ex = Execution::Parallel);

/// Pointwise sum_{n<=N} xi^2 H_n, which telescopes to xi^2/(xi^2 + 1/N).
RealVector lift_weight_sum(const Profile& profile, Index levels);

enum class Sign { Plus, Minus };

/// min over g in the minimal domain of ||(op + s i) g - u|| / ||u||, s = +1 for
/// Plus and -1 for Minus; Minus measures distance to ran(op - i), whose
/// complement is ker(op* + i). Sparse normal equations (sigma_min >= 1).
double range_defect(const GridOperator& op, Sign sign, const ComplexVector& u);

/// xi^4 (N = 0) or the truncated xi^6/(xi^2 + 1/N).
RealVector regularizer_weights(const Profile& profile, Index levels = 0);

/// Delta d Delta with Delta diagonal.
GridOperator regularize(const GridOperator& op, const RealVector& delta);

/// max |A - A*| entry.
double symmetry_residual(const GridOperator& op);

struct ContrastRow {
  Index P = 0;  // M + 1
  double h = 0.0;
  double minus = 0.0, plus = 0.0;          // minimal Dirac
  double minus_reg = 0.0, plus_reg = 0.0;  // Delta d Delta
  double reg_symmetry = 0.0;
};

/// Range defects of exp(-t) along the ladder of P = M + 1 values.
std::vector<ContrastRow> regularization_contrast(double length, const std::vector<Index>& ladder,
                                                 Execution ex = Execution::Parallel);

/// exp(-4/((t-a)(b-t))) on (a, b), zero elsewhere, and its derivative.
double bump(double t, double a = 2.0, double b = 6.0);
double bump_derivative(double t, double a = 2.0, double b = 6.0);

/// ||lift(g) - i g'|| / ||g'|| for the standard bump on L = length with M = P-1.
double lift_apply_error(double length, Index P, Index levels, Execution ex = Execution::Parallel);

}  // namespace absorbtk::halfline
