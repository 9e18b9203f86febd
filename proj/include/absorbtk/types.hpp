#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace absorbtk {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix; the ambient realization of algebra elements and of
/// truncated operators on the standard module.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Choice between the OpenMP kernel and its serial reference.
enum class Execution { Serial, Parallel };

}  // namespace absorbtk
