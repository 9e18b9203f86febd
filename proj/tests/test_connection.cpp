#include <doctest.h>

#include <cmath>
#include <random>

#include "absorbtk/absorb.hpp"
#include "absorbtk/catalog.hpp"
#include "absorbtk/connection.hpp"
#include "absorbtk/errors.hpp"
#include "oracles.hpp"

using namespace absorbtk;
using opcore::op_norm;

namespace {

AbsorptionSystem system_for(const std::string& spec, Index levels) {
  return build_isometry(rescale(builtin_instance(InstanceSpec::parse(spec)).pres), levels);
}

ComplexMatrix block_diag(const ComplexMatrix& b, Index copies) {
  const Index d = b.rows();
  ComplexMatrix out = ComplexMatrix::Zero(copies * d, copies * d);
  for (Index k = 0; k < copies; ++k) out.block(k * d, k * d, d, d) = b;
  return out;
}

// diagonal subalgebra of M_2 with a single diagonal generator
ModulePresentation diagonal_presentation() {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  ModulePresentation p;
  p.ctx = std::make_shared<const AlgebraContext>(
      "diag", std::vector<ComplexMatrix>{oracle::unit(2, 0, 0), oracle::unit(2, 1, 1)}, z);
  p.m = 1;
  p.J = 1;
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 0) = 0.5;
  g(1, 1) = 0.25;
  p.generators = {{g}};
  p.scale = {1.0};
  return p;
}

}  // namespace

TEST_CASE("omega algebra dimensions") {
  CHECK(omega_algebra(*builtin_instance(InstanceSpec::parse("scalar")).ctx).dimension() == 1);
  const OmegaAlgebra pauli = omega_algebra(*builtin_instance(InstanceSpec::parse("pauli")).ctx);
  CHECK(pauli.dimension() == 4);
  CHECK(pauli.closure_residual() <= 1e-12);
  const OmegaAlgebra diag = omega_algebra(*diagonal_presentation().ctx);
  CHECK(diag.dimension() == 2);
  CHECK(diag.membership_residual(oracle::unit(2, 0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("grassmann matches the dense generator form and the alternate order") {
  std::mt19937_64 rng(51);
  for (const char* spec : {"pauli", "clockshift(3)", "projective(2)"}) {
    const AbsorptionSystem sys = system_for(spec, 9);
    const ComplexMatrix xi = oracle::random_matrix(sys.dim(), sys.d(), rng);
    const ConnectionValue v = grassmann(sys, xi);
    REQUIRE(v.slots.size() == static_cast<std::size_t>(sys.pairing.size()));
    const ComplexMatrix dbig = block_diag(sys.pres.ctx->D0(), sys.pairing.size());
    const ComplexMatrix wx = sys.W * xi;
    const ComplexMatrix expected = sys.Wstar * (dbig * wx - wx * sys.pres.ctx->D0());
    const double scale = 1 + op_norm(expected);
    CHECK(op_norm(v.generator_form - expected) <= 1e-12 * scale);
    CHECK(op_norm(grassmann_alternate(sys, xi) - expected) <= 1e-12 * scale);
  }
}

TEST_CASE("grassmann is linear and vanishes for D = 0") {
  std::mt19937_64 rng(52);
  const AbsorptionSystem sys = system_for("pauli", 7);
  const ComplexMatrix a = oracle::random_matrix(sys.dim(), 2, rng), b = oracle::random_matrix(sys.dim(), 2, rng);
  const Complex c(0.7, 2.0);
  const ComplexMatrix lhs = grassmann(sys, a + c * b).generator_form;
  const ComplexMatrix rhs = grassmann(sys, a).generator_form + c * grassmann(sys, b).generator_form;
  CHECK(op_norm(lhs - rhs) <= 1e-12 * (1 + op_norm(lhs)));
  CHECK(op_norm(grassmann(sys, a, ComplexMatrix::Zero(2, 2)).generator_form) == 0.0);
  CHECK_THROWS_AS(grassmann(sys, ComplexMatrix::Zero(3, 2)), DomainError);
}

TEST_CASE("Leibniz residual: exact for a = 1, O(1/N) otherwise") {
  const AbsorptionSystem base = system_for("pauli", 64);
  std::mt19937_64 rng(53);
  const ComplexMatrix a = random_element(*base.pres.ctx, rng);
  const ComplexMatrix xi = random_smooth_sample(base, 7);
  CHECK(leibniz_residual(base, xi, ComplexMatrix::Identity(2, 2)) <= 1e-13);

  const double c8 = leibniz_residual(truncate(base, 8), xi, a) * 8;
  CHECK(c8 > 0.0);
  for (Index n : {16, 32, 64}) {
    const AbsorptionSystem sys = truncate(base, n);
    // sample is supported on the first four levels, so it does not move with N
    CHECK(op_norm(random_smooth_sample(sys, 7) - xi) <= 1e-14);
    const double r = leibniz_residual(sys, xi, a);
    CHECK(r * static_cast<double>(n) <= 2.0 * c8);
    CHECK(r <= leibniz_bound(sys, xi, a));
  }
}

TEST_CASE("Hermitian residual equals its closed form") {
  std::mt19937_64 rng(54);
  for (Index n : {4, 16, 64}) {
    const AbsorptionSystem sys = system_for("pauli", n);
    const ComplexMatrix xi = random_smooth_sample(sys, 11), eta = random_smooth_sample(sys, 12);
    const ComplexMatrix& g = sys.G.matrix;
    const ComplexMatrix gn = (g + ComplexMatrix::Identity(g.rows(), g.cols()) / static_cast<double>(n)).inverse();
    const ComplexMatrix x = xi.adjoint() * (g - g * gn * g) * eta;
    const ComplexMatrix& d0 = sys.pres.ctx->D0();
    const double expected = oracle::svd_norm(d0 * x - x * d0);
    CHECK(std::abs(hermitian_residual(sys, xi, eta) - expected) <= 1e-12);
    CHECK(hermitian_residual(sys, xi, eta) <= hermitian_bound(sys, xi, eta));
  }
}

TEST_CASE("bounds are infinite for singular Gram matrices") {
  const AbsorptionSystem sys = system_for("projective(2)", 8);
  const ComplexMatrix xi = random_smooth_sample(sys, 1);
  CHECK(std::isinf(hermitian_bound(sys, xi, xi)));
}

TEST_CASE("smooth samples") {
  const AbsorptionSystem sys = build_isometry(diagonal_presentation(), 6);
  ComplexMatrix x = ComplexMatrix::Zero(6 * 2, 2);
  x.topRows(2) = oracle::unit(2, 0, 0);
  const ComplexMatrix xi = smooth_sample(sys, x);
  // xi = sqrt(H_1) G^2 e11
  CHECK(op_norm(xi - sys.chain.sqrtH[0] * sys.G.matrix * sys.G.matrix * oracle::unit(2, 0, 0)) <= 1e-15);
  x.topRows(2) = oracle::unit(2, 0, 1);
  CHECK_THROWS_AS(smooth_sample(sys, x), NotInAlgebraError);
  CHECK_THROWS_AS(smooth_sample(sys, ComplexMatrix::Zero(4, 2)), DomainError);
  // a non-diagonal xi leaves the algebra after W
  CHECK_THROWS_AS(grassmann(sys, oracle::unit(2, 0, 1)), NotInAlgebraError);
}
