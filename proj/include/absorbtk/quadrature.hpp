#pragma once

#include <vector>

namespace absorbtk::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes on [-1, 1] (Newton iteration on P_n).
Rule gauss_legendre(int count);

/// Same rule mapped affinely onto [a, b].
Rule gauss_legendre(int count, double a, double b);

}  // namespace absorbtk::quadrature
