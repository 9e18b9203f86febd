#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "absorbtk/absorb.hpp"

namespace absorbtk {

/// Symmetric-lift data on X (x) Y, Y = C^d, in orthonormal coordinates
/// u = G^(1/2) v, where W (x) 1 becomes the stack of sqrt(H_n) G^(1/2) and
/// matrix adjoints are the module adjoints.
struct LiftSystem {
  std::shared_ptr<const AbsorptionSystem> sys;
  ComplexMatrix D;      // Hermitian on Y
  ComplexMatrix Dhat;   // I_J (x) D
  ComplexMatrix Gh;     // G^(1/2)
  ComplexMatrix Wt;     // NJd x Jd
  ComplexMatrix Delta;  // (W*K^2W) (x) 1 = Wt* K^2 Wt
};

/// D defaults to the context's D0. Throws DomainError if D is not Hermitian.
LiftSystem make_lift_system(std::shared_ptr<const AbsorptionSystem> sys,
                            std::optional<ComplexMatrix> d = std::nullopt);

/// (W* (x) 1) diag(D) (W (x) 1).
ComplexMatrix lift_operator(const LiftSystem& ls);

/// ||Q^2 - Q|| for Q = P (x) 1, from low-rank factors.
double projection_defect(const LiftSystem& ls);

/// ||lift(xi (x) y) - grad(xi)(y) - xi (x) D y||, with grad built from [D, .].
double lift_vs_connection(const LiftSystem& ls, const ComplexMatrix& xi, const ComplexVector& y);

struct RegularizedLift {
  ComplexMatrix matrix;  // Delta lift Delta
  double hermiticity = 0.0;
  double lambda_min_delta = 0.0;
  double commutator_residual = 0.0;  // ||[diag(D), PK^2] - delta(PK^2)||
};

RegularizedLift regularized_lift(const LiftSystem& ls);

struct CompositionReport {
  double adjoint = 0.0;   // (Dx)* - (Dx - [D,x])
  double left = 0.0;      // xD - (Dx - [D,x])
  double sandwich = 0.0;  // xDx - (Dx^2 - [D,x] x)
  double worst() const;
};

/// Throws DomainError unless both inputs are Hermitian.
CompositionReport composition_identities(const ComplexMatrix& d, const ComplexMatrix& x);

/// GNS space of M_d for the state tr(sigma .), quotiented by the null space.
struct GnsSpace {
  Index d = 0;
  ComplexMatrix sigma;
  ComplexMatrix gram;    // tr(sigma E_i* E_j) over column-major matrix units
  ComplexMatrix coords;  // d^2 x dim, orthonormal coordinates of the quotient
  Index dimension() const { return coords.cols(); }
  ComplexMatrix rep(const ComplexMatrix& a) const;
  ComplexVector cyclic() const;
};

/// Throws InvalidStateError unless sigma is PSD with unit trace (1e-12).
GnsSpace gns_space(const ComplexMatrix& sigma);

struct GnsReport {
  GnsSpace space;
  std::vector<ComplexMatrix> localized;
  double homomorphism_residual = 0.0;  // over basis pairs of the algebra, incl. adjoints
  double state_residual = 0.0;         // |<[I], [a]> - tr(sigma a)| over the basis
};

GnsReport gns_localize(const AlgebraContext& ctx, const ComplexMatrix& sigma,
                       const std::vector<ComplexMatrix>& ops);

/// ||rep(Dx)* - (rep(Dx) - rep([D, x]))||.
double localized_adjoint_residual(const GnsSpace& space, const ComplexMatrix& d, const ComplexMatrix& x);

}  // namespace absorbtk
