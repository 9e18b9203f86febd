#include <doctest.h>

#include <cmath>
#include <random>

#include "absorbtk/catalog.hpp"
#include "absorbtk/errors.hpp"
#include "absorbtk/module.hpp"
#include "absorbtk/opcore.hpp"
#include "oracles.hpp"

using namespace absorbtk;
using opcore::op_norm;

namespace {

std::shared_ptr<const AlgebraContext> full(Index d, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> units;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) units.push_back(oracle::unit(d, i, j));
  return std::make_shared<const AlgebraContext>("full", units, oracle::random_hermitian(d, rng));
}

ModulePresentation random_presentation(Index d, Index m, Index J, std::mt19937_64& rng) {
  ModulePresentation p;
  p.ctx = full(d, rng);
  p.m = m;
  p.J = J;
  p.generators.assign(J, {});
  for (auto& g : p.generators)
    for (Index k = 0; k < m; ++k) g.push_back(oracle::random_matrix(d, d, rng));
  p.scale.assign(J, 1.0);
  return p;
}

}  // namespace

TEST_CASE("gram of orthonormal generators is the identity") {
  std::mt19937_64 rng(31);
  ModulePresentation p = random_presentation(2, 3, 3, rng);
  for (Index j = 0; j < 3; ++j)
    for (Index k = 0; k < 3; ++k)
      p.generators[j][k] = ComplexMatrix::Identity(2, 2) * ((j == k) ? 1.0 : 0.0);
  const BlockOperator g = gram(p);
  CHECK(g.block_rows() == 3);
  CHECK((g.matrix - ComplexMatrix::Identity(6, 6)).norm() == 0.0);
  for (double r : g.membership) CHECK(r <= 1e-14);
}

TEST_CASE("gram is Hermitian PSD and matches a dense oracle") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const ModulePresentation p = random_presentation(3, 2, 4, rng);
    const BlockOperator g = gram(p);
    // oracle: stack generators into an (m d) x (J d) matrix X; G = X* X
    ComplexMatrix x(2 * 3, 4 * 3);
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 2; ++k) x.block(k * 3, j * 3, 3, 3) = p.generators[j][k];
    CHECK(op_norm(g.matrix - x.adjoint() * x) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x.adjoint() * x);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK(op_norm(g.at(1, 2) - p.gram_block(1, 2)) == 0.0);
  }
}

TEST_CASE("gram names the first block outside the algebra") {
  std::vector<ComplexMatrix> diag = {oracle::unit(2, 0, 0), oracle::unit(2, 1, 1)};
  ModulePresentation p;
  p.ctx = std::make_shared<const AlgebraContext>("diag", diag, ComplexMatrix::Zero(2, 2));
  p.m = 1;
  p.J = 2;
  p.generators = {{ComplexMatrix::Identity(2, 2)}, {oracle::unit(2, 0, 1)}};
  p.scale = {1.0, 1.0};
  try {
    gram(p);
    FAIL("expected NotInAlgebraError");
  } catch (const NotInAlgebraError& e) {
    REQUIRE(e.block().has_value());
    CHECK(e.block()->first == 1);
    CHECK(e.block()->second == 2);
  }
}

TEST_CASE("validate rejects malformed presentations") {
  std::mt19937_64 rng(33);
  ModulePresentation p = random_presentation(2, 2, 2, rng);
  CHECK_NOTHROW(validate(p));
  ModulePresentation q = p;
  q.scale[1] = 0.0;
  CHECK_THROWS_AS(validate(q), InvariantError);
  q = p;
  q.generators[0].pop_back();
  CHECK_THROWS_AS(validate(q), InvariantError);
  q = p;
  q.generators[1][0] = ComplexMatrix::Zero(3, 3);
  CHECK_THROWS_AS(validate(q), InvariantError);
}

TEST_CASE("rescale: scalar generator") {
  const Instance s = builtin_instance(InstanceSpec::parse("scalar(2)"));
  const ModulePresentation r = rescale(s.pres);
  CHECK(r.scale[0] == doctest::Approx(0.5));
  CHECK(std::abs(gram(r).matrix(0, 0) - Complex(1.0)) <= 1e-15);
  // M = max(1, ...) keeps small generators from being blown up
  const Instance small = builtin_instance(InstanceSpec::parse("scalar(0.5)"));
  CHECK(rescale(small.pres).scale[0] == doctest::Approx(1.0));
}

TEST_CASE("rescale enforces the level-weighted normalization") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 5; ++trial) {
    const ModulePresentation p = random_presentation(3, 2, 5, rng);
    const ModulePresentation r = rescale(p);
    CHECK(normalization_bound(r) <= 1.0 + 1e-12);
    CHECK_NOTHROW(validate(r));
    // scale is cumulative, so a second pass only divides by n^2 again (M = 1 now)
    const ModulePresentation rr = rescale(r);
    for (Index n = 0; n < 5; ++n) {
      const double k = static_cast<double>(n + 1);
      CHECK(rr.scale[n] == doctest::Approx(r.scale[n] / (k * k)).epsilon(1e-12));
    }
  }
  for (const auto& spec : builtin_catalog())
    CHECK(normalization_bound(rescale(builtin_instance(spec).pres)) <= 1.0 + 1e-12);
}

TEST_CASE("rescale keeps degenerate generators and warns") {
  std::mt19937_64 rng(35);
  ModulePresentation p = random_presentation(2, 1, 3, rng);
  p.generators[1][0].setZero();
  std::vector<std::string> warnings;
  const ModulePresentation r = rescale(p, &warnings);
  CHECK(r.J == 3);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("2") != std::string::npos);
}

TEST_CASE("pairing table is a bijection") {
  const PairingTable t = pairing_index(5, 3);
  CHECK(t.size() == 15);
  for (Index k = 1; k <= t.size(); ++k) {
    const auto [level, slot] = t.forward(k);
    CHECK(t.inverse(level, slot) == k);
  }
  CHECK(t.forward(1) == std::make_pair(Index{1}, Index{1}));
  CHECK(t.forward(4) == std::make_pair(Index{2}, Index{1}));
  CHECK_THROWS_AS(t.forward(0), DomainError);
  CHECK_THROWS_AS(t.forward(16), DomainError);
  CHECK_THROWS_AS(t.inverse(6, 1), DomainError);
  CHECK_THROWS_AS(pairing_index(0, 3), DomainError);
}
