#pragma once

#include <vector>

#include "absorbtk/module.hpp"
#include "absorbtk/opcore.hpp"
#include "absorbtk/types.hpp"

namespace absorbtk {

/// G_n = (G + 1/n)^(-1), H_n = G_n - G_{n-1}, sqrt(H_n); entry n-1 holds level n.
struct ResolventChain {
  std::vector<ComplexMatrix> G;
  std::vector<ComplexMatrix> H;
  std::vector<ComplexMatrix> sqrtH;
  Index levels() const { return static_cast<Index>(H.size()); }
};

/// H_n is evaluated from (1+nG)^(-1)(1+(n-1)G)^(-1), independently of the
/// Cholesky inverses G_n. Per-level roots run through the parallel kernel.
ResolventChain resolvent_chain(const ComplexMatrix& g, Index levels,
                               Execution ex = Execution::Parallel);

/// (G + 1/N)^(-1) by Cholesky.
ComplexMatrix shifted_inverse(const ComplexMatrix& g, Index n);

/// ||sum_{n<=N} H_n - (G + 1/N)^(-1)||.
double telescoping_residual(const ResolventChain& chain, const ComplexMatrix& g, Index n);

/// ||G (G + 1/N)^(-1) G - G||.
double isometry_defect(const ComplexMatrix& g, Index n);

/// ||v* G v||^(1/2): the module norm of a coefficient vector (Jd x d).
double module_norm(const ComplexMatrix& g, const ComplexMatrix& v);

struct AbsorptionSystem {
  ModulePresentation pres;
  Index N = 0;
  BlockOperator G;
  ComplexMatrix Dt;  // I_J (x) D0
  ResolventChain chain;
  PairingTable pairing{1, 1};
  ComplexMatrix W;      // NJd x Jd, level blocks sqrt(H_n) G
  ComplexMatrix Wstar;  // Jd x NJd, [sqrt(H_1) ... sqrt(H_N)] (adjoint for the G form)
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  Index d() const { return pres.d(); }
  Index J() const { return pres.J; }
  Index dim() const { return pres.J * pres.d(); }
  /// Coefficients of the frame vector zeta_k (k 1-based): block column of sqrt(H_n).
  ComplexMatrix zeta(Index k) const;
  double dfct() const { return isometry_defect(G.matrix, N); }
  bool invertible() const { return lambda_min > 1e-8 * lambda_max; }
  /// Spectral condition number; infinite for singular G.
  double kappa() const;
  /// Level block n (1-based) of a stacked NJd x c matrix.
  static auto level(ComplexMatrix& stacked, Index n, Index dim) {
    return stacked.middleRows((n - 1) * dim, dim);
  }
};

AbsorptionSystem build_isometry(const ModulePresentation& pres, Index levels,
                                Execution ex = Execution::Parallel);

/// The system restricted to its first `levels` levels (no recomputation).
AbsorptionSystem truncate(const AbsorptionSystem& sys, Index levels);

/// ||sum_k zeta_k <zeta_k, eta> - eta|| in the module norm.
double frame_residual(const AbsorptionSystem& sys, const ComplexMatrix& eta);

struct KReport {
  double commutation = 0.0;  // ||KP - PK||
  double wkw_min = 0.0;      // lambda_min of W*KW (selfadjoint form)
  bool dense_image_certified = false;
};

/// K = diag(G) on N levels, P = W W*. P is never materialized.
KReport build_K(const AbsorptionSystem& sys);

/// Blockwise G on a stacked NJd x c matrix.
ComplexMatrix apply_K(const AbsorptionSystem& sys, const ComplexMatrix& x);

struct DecayRow {
  Index n = 0;
  double r_spectral = 0.0;
  double r_integral = 0.0;
  double engine_gap = 0.0;  // ||difference of the two delta(sqrt(H_n) G^2)||
};

struct DecayProfile {
  std::vector<DecayRow> rows;
  bool exact_zero = false;
  double slope = 0.0;          // least squares over the upper half of the range
  double bounded_ratio = 0.0;  // max r_n n^0.8 / (r_first n_first^0.8)
  double max_engine_gap = 0.0;
};

/// Geometric ladder with `per_octave` points per doubling, rounded to integers.
std::vector<Index> decay_ladder(Index lo = 16, Index hi = 512, int per_octave = 8);

/// r_n = ||delta(sqrt(H_n) G^2)|| by the product rule, with the derivatives of
/// (1+nG)^(-1/2) and (1+(n-1)G)^(-1/2) from both engines.
DecayProfile decay_profile(const ComplexMatrix& g, const ComplexMatrix& dt,
                           const std::vector<Index>& ns, Execution ex = Execution::Parallel,
                           const opcore::QuadratureSpec& quad = {});
DecayProfile decay_profile(const AbsorptionSystem& sys, const std::vector<Index>& ns,
                           Execution ex = Execution::Parallel);

struct TailReport {
  double tail = 0.0;   // ||delta(K^2 (P_N2 - P_N1))||
  double bound = 0.0;  // sum over new levels of row and column hook norms
};

TailReport diff_compact_tail(const AbsorptionSystem& sys, Index n1, Index n2);

}  // namespace absorbtk
