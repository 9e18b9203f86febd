#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absorbtk/cstar.hpp"
#include "absorbtk/types.hpp"

namespace absorbtk {

/// Block matrix over M_d: `matrix` is (rows*block) x (cols*block).
struct BlockOperator {
  ComplexMatrix matrix;
  Index block = 1;
  /// Membership residual of each block in the dense subalgebra (row-major);
  /// empty when not tracked.
  std::vector<double> membership;

  Index block_rows() const { return matrix.rows() / block; }
  Index block_cols() const { return matrix.cols() / block; }
  ComplexMatrix at(Index i, Index j) const { return matrix.block(i * block, j * block, block, block); }
};

/// Generators xi_1..xi_J of a submodule of the free module (M_d)^m.
/// Elements of the module are coefficient vectors a in A^J (a Jd x d stack)
/// meaning sum_j xi_j a_j.
struct ModulePresentation {
  std::shared_ptr<const AlgebraContext> ctx;
  Index m = 1;
  Index J = 1;
  /// generators[j][k]: k-th component of xi_{j+1}, unscaled.
  std::vector<std::vector<ComplexMatrix>> generators;
  /// Per-generator scale c_j (cumulative over rescale calls).
  std::vector<double> scale;

  Index d() const { return ctx->d(); }
  /// <xi_i, xi_j> including scales (0-based).
  ComplexMatrix gram_block(Index i, Index j) const;
};

/// Checks shapes, Gram membership and positivity. Throws NotInAlgebraError
/// naming the block, NotPositiveError, or InvariantError.
void validate(const ModulePresentation& pres);

/// The J x J block Gram matrix {<xi_i, xi_j>}.
BlockOperator gram(const ModulePresentation& pres);

/// c_n = 1/(n^2 sqrt(M)), M = max(1, max ||<xi_n, xi_m>||_delta). Degenerate
/// (zero) generators are kept; a warning is appended when `warnings` is given.
ModulePresentation rescale(const ModulePresentation& pres,
                           std::vector<std::string>* warnings = nullptr);

/// max over pairs of ||<xi_n, xi_m>||_delta * n^2 m^2.
double normalization_bound(const ModulePresentation& pres);

/// Row-major reindexing of (level, slot) pairs; all indices 1-based.
class PairingTable {
 public:
  PairingTable(Index levels, Index slots);
  Index levels() const { return levels_; }
  Index slots() const { return slots_; }
  Index size() const { return levels_ * slots_; }
  std::pair<Index, Index> forward(Index k) const;
  Index inverse(Index level, Index slot) const;

 private:
  Index levels_;
  Index slots_;
};

PairingTable pairing_index(Index levels, Index slots);

}  // namespace absorbtk
