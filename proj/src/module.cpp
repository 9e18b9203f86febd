#include "absorbtk/module.hpp"

#include <algorithm>
#include <cmath>

#include "absorbtk/errors.hpp"
#include "absorbtk/opcore.hpp"

namespace absorbtk {

ComplexMatrix ModulePresentation::gram_block(Index i, Index j) const {
  const Index dim = d();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Index k = 0; k < m; ++k) out += generators[i][k].adjoint() * generators[j][k];
  return (scale[i] * scale[j]) * out;
}

void validate(const ModulePresentation& pres) {
  if (!pres.ctx) throw InvariantError("missing algebra context", "");
  if (pres.J < 1 || pres.m < 1) throw InvariantError("empty presentation", "J and m must be >= 1");
  if (static_cast<Index>(pres.generators.size()) != pres.J ||
      static_cast<Index>(pres.scale.size()) != pres.J)
    throw InvariantError("generator count mismatch", "expected J = " + std::to_string(pres.J));
  for (const auto& gen : pres.generators) {
    if (static_cast<Index>(gen.size()) != pres.m)
      throw InvariantError("generator rank mismatch", "expected m = " + std::to_string(pres.m));
    for (const auto& c : gen)
      if (c.rows() != pres.d() || c.cols() != pres.d())
        throw InvariantError("generator shape mismatch", "components must be d x d");
  }
  for (double c : pres.scale)
    if (!(c > 0) || !std::isfinite(c)) throw InvariantError("scale not positive", "");
  gram(pres);
}

BlockOperator gram(const ModulePresentation& pres) {
  const Index d = pres.d();
  const Index J = pres.J;
  BlockOperator g;
  g.block = d;
  g.matrix.resize(J * d, J * d);
  g.membership.resize(J * J);
  for (Index i = 0; i < J; ++i) {
    for (Index j = 0; j < J; ++j) {
      const ComplexMatrix b = pres.gram_block(i, j);
      const double r = pres.ctx->membership_residual(b);
      if (r > kMembershipThreshold) {
        throw NotInAlgebraError("not-in-algebra: Gram block (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") membership residual " +
                                    std::to_string(r),
                                r, std::make_pair(static_cast<int>(i + 1), static_cast<int>(j + 1)));
      }
      g.membership[i * J + j] = r;
      g.matrix.block(i * d, j * d, d, d) = b;
    }
  }
  const double herm = opcore::hermiticity_residual(g.matrix);
  if (herm > 1e-12) throw InvariantError("Gram not selfadjoint", std::to_string(herm));
  const double lo = opcore::eigh(g.matrix).min_eigenvalue();
  if (lo < -1e-10) throw NotPositiveError("Gram matrix not positive semidefinite", lo);
  return g;
}

ModulePresentation rescale(const ModulePresentation& pres, std::vector<std::string>* warnings) {
  double worst = 1.0;
  for (Index i = 0; i < pres.J; ++i) {
    for (Index j = 0; j < pres.J; ++j)
      worst = std::max(worst, delta_norm(*pres.ctx, pres.gram_block(i, j)));
    if (warnings && opcore::op_norm(pres.gram_block(i, i)) == 0.0)
      warnings->push_back("degenerate generator " + std::to_string(i + 1) + " kept");
  }
  ModulePresentation out = pres;
  const double root = std::sqrt(worst);
  for (Index n = 0; n < pres.J; ++n) {
    const double k = static_cast<double>(n + 1);
    out.scale[n] = pres.scale[n] / (k * k * root);
  }
  return out;
}

double normalization_bound(const ModulePresentation& pres) {
  double worst = 0.0;
  for (Index i = 0; i < pres.J; ++i)
    for (Index j = 0; j < pres.J; ++j) {
      const double w = static_cast<double>((i + 1) * (i + 1) * (j + 1) * (j + 1));
      worst = std::max(worst, delta_norm(*pres.ctx, pres.gram_block(i, j)) * w);
    }
  return worst;
}

PairingTable::PairingTable(Index levels, Index slots) : levels_(levels), slots_(slots) {
  if (levels < 1 || slots < 1) throw DomainError("pairing_index: N and J must be >= 1");
}

std::pair<Index, Index> PairingTable::forward(Index k) const {
  if (k < 1 || k > size()) throw DomainError("pairing_index: index out of range");
  return {(k - 1) / slots_ + 1, (k - 1) % slots_ + 1};
}

Index PairingTable::inverse(Index level, Index slot) const {
  if (level < 1 || level > levels_ || slot < 1 || slot > slots_)
    throw DomainError("pairing_index: pair out of range");
  return (level - 1) * slots_ + slot;
}

PairingTable pairing_index(Index levels, Index slots) { return PairingTable(levels, slots); }

}  // namespace absorbtk
