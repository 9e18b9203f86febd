#include <doctest.h>

#include <cmath>
#include <random>

#include "absorbtk/absorb.hpp"
#include "absorbtk/catalog.hpp"
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

ComplexMatrix dense_inverse(const ComplexMatrix& g, double n) {
  return (g + ComplexMatrix::Identity(g.rows(), g.cols()) / n).inverse();
}

}  // namespace

TEST_CASE("resolvent chain for G = I") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const ResolventChain c = resolvent_chain(id, 10, Execution::Serial);
  REQUIRE(c.levels() == 10);
  for (Index n = 1; n <= 10; ++n) {
    const double nn = static_cast<double>(n);
    CHECK(op_norm(c.G[n - 1] - id * (nn / (nn + 1))) <= 1e-14);
    CHECK(op_norm(c.H[n - 1] - id * (1.0 / ((1 + nn) * nn))) <= 1e-14);
    CHECK(op_norm(c.sqrtH[n - 1] * c.sqrtH[n - 1] - c.H[n - 1]) <= 1e-14);
    CHECK(telescoping_residual(c, id, n) <= 1e-14);
    CHECK(isometry_defect(id, n) == doctest::Approx(1.0 / (nn + 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(resolvent_chain(id, 0), DomainError);
  CHECK_THROWS_AS(resolvent_chain(-id, 3), NotPositiveError);
  CHECK_THROWS_AS(resolvent_chain(oracle::unit(3, 0, 1), 3), DomainError);
}

TEST_CASE("chain telescopes for random PSD G, including singular ones") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    ComplexMatrix g = oracle::random_psd(5, rng, 0.0, 1.0);
    if (trial % 2) {
      // rank-deficient
      const ComplexMatrix x = oracle::random_matrix(5, 2, rng);
      g = x * x.adjoint() / op_norm(x * x.adjoint());
    }
    const ResolventChain c = resolvent_chain(g, 64);
    for (Index n : {1, 7, 64}) {
      CHECK(telescoping_residual(c, g, n) <= 1e-10);
      CHECK(op_norm(c.G[n - 1] - dense_inverse(g, static_cast<double>(n))) <= 1e-9 * n);
    }
  }
}

TEST_CASE("scalar isometry defect is 1/(N+1) at unit Gram") {
  const AbsorptionSystem sys = system_for("scalar(2)", 32);
  CHECK(std::abs(sys.G.matrix(0, 0) - Complex(1.0)) <= 1e-15);
  // W* W = sum_n H_n G = N/(N+1) for G = 1
  const Complex ww = (sys.Wstar * sys.W)(0, 0);
  CHECK(std::abs(ww - Complex(32.0 / 33.0)) <= 1e-14);
  CHECK(sys.dfct() == doctest::Approx(1.0 / 33.0).epsilon(1e-12));
  CHECK(sys.invertible());
  CHECK(sys.kappa() == doctest::Approx(1.0));
}

TEST_CASE("W* is the adjoint of W for the Gram form") {
  const AbsorptionSystem sys = system_for("pauli", 12);
  std::mt19937_64 rng(42);
  const ComplexMatrix x = oracle::random_matrix(sys.dim(), sys.d(), rng);
  const ComplexMatrix y = oracle::random_matrix(12 * sys.dim(), sys.d(), rng);
  // <Wx, y> on the standard module equals <x, W* y>_G
  const ComplexMatrix lhs = (sys.W * x).adjoint() * y;
  const ComplexMatrix rhs = x.adjoint() * sys.G.matrix * (sys.Wstar * y);
  CHECK(op_norm(lhs - rhs) <= 1e-12);
}

TEST_CASE("frame residual matches the dense reconstruction") {
  std::mt19937_64 rng(43);
  for (const char* spec : {"pauli", "clockshift(4)"}) {
    const AbsorptionSystem sys = system_for(spec, 20);
    const ComplexMatrix eta = oracle::random_matrix(sys.dim(), sys.d(), rng);
    const ComplexMatrix& g = sys.G.matrix;
    const ComplexMatrix err = dense_inverse(g, 20) * g * eta - eta;
    const double expected = std::sqrt(oracle::svd_norm(err.adjoint() * g * err));
    CHECK(std::abs(frame_residual(sys, eta) - expected) <= 1e-10);
  }
}

TEST_CASE("truncate matches a fresh build") {
  const AbsorptionSystem big = system_for("pauli", 30);
  const AbsorptionSystem small = system_for("pauli", 11);
  const AbsorptionSystem cut = truncate(big, 11);
  CHECK(op_norm(cut.W - small.W) <= 1e-14);
  CHECK(op_norm(cut.Wstar - small.Wstar) <= 1e-14);
  CHECK(cut.pairing.size() == small.pairing.size());
  CHECK_THROWS_AS(truncate(big, 31), DomainError);
}

TEST_CASE("build_K agrees with the dense commutator") {
  for (const char* spec : {"pauli", "clockshift(3)", "projective(2)", "scalar"}) {
    const AbsorptionSystem sys = system_for(spec, 6);
    const ComplexMatrix p = sys.W * sys.Wstar;
    const ComplexMatrix k = block_diag(sys.G.matrix, 6);
    const KReport rep = build_K(sys);
    CHECK(std::abs(rep.commutation - oracle::svd_norm(k * p - p * k)) <= 1e-12);
    CHECK(op_norm(apply_K(sys, sys.W) - k * sys.W) <= 1e-14);
  }
}

TEST_CASE("dense image is certified only for invertible Gram matrices") {
  CHECK(build_K(system_for("pauli", 16)).dense_image_certified);
  CHECK(build_K(system_for("scalar", 16)).dense_image_certified);
  const AbsorptionSystem proj = system_for("projective(4)", 16);
  CHECK_FALSE(proj.invertible());
  CHECK(std::isinf(proj.kappa()));
  CHECK_FALSE(build_K(proj).dense_image_certified);
}

TEST_CASE("decay_ladder") {
  const auto l = decay_ladder(16, 512, 8);
  CHECK(l.front() == 16);
  CHECK(l.back() == 512);
  CHECK(l.size() == 41);
  for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i] > l[i - 1]);
  CHECK(decay_ladder(4, 8, 1) == std::vector<Index>{4, 8});
  CHECK_THROWS_AS(decay_ladder(10, 5, 8), DomainError);
}

TEST_CASE("decay rows match a direct functional-calculus oracle") {
  const AbsorptionSystem sys = system_for("pauli", 2);
  const std::vector<Index> ns = {1, 2, 5, 16, 100};
  const DecayProfile prof = decay_profile(sys, ns, Execution::Serial);
  REQUIRE(prof.rows.size() == ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    const auto f = [n](double x) {
      x = std::max(x, 0.0);
      return x * x / std::sqrt((1 + n * x) * (1 + (n - 1) * x));
    };
    const ComplexMatrix fg = oracle::herm_fun(sys.G.matrix, f);
    const double expected = oracle::svd_norm(sys.Dt * fg - fg * sys.Dt);
    CHECK(std::abs(prof.rows[i].r_spectral - expected) <= 1e-12);
    CHECK(std::abs(prof.rows[i].r_integral - expected) <= 1e-8);
    CHECK(prof.rows[i].engine_gap <= 1e-8);
  }
}

TEST_CASE("decay profile shapes") {
  const AbsorptionSystem scalar = system_for("scalar", 2);
  const DecayProfile z = decay_profile(scalar, decay_ladder(16, 64, 4));
  CHECK(z.exact_zero);

  const AbsorptionSystem pauli = system_for("pauli", 2);
  const DecayProfile p = decay_profile(pauli, decay_ladder(16, 512, 8));
  CHECK_FALSE(p.exact_zero);
  CHECK(p.slope <= -0.8);
  CHECK(p.bounded_ratio <= 1.1);
  CHECK(p.max_engine_gap <= 1e-8);
  CHECK_THROWS_AS(decay_profile(pauli, std::vector<Index>{}), DomainError);
}

TEST_CASE("diff_compact_tail agrees with the dense operator") {
  const AbsorptionSystem sys = system_for("pauli", 10);
  const Index dim = sys.dim();
  const ComplexMatrix dbig = block_diag(sys.Dt, 10);
  const ComplexMatrix k2 = block_diag(sys.G.matrix * sys.G.matrix, 10);
  const auto t = [&](Index n) {
    ComplexMatrix w = ComplexMatrix::Zero(10 * dim, dim), ws = ComplexMatrix::Zero(dim, 10 * dim);
    w.topRows(n * dim) = sys.W.topRows(n * dim);
    ws.leftCols(n * dim) = sys.Wstar.leftCols(n * dim);
    return ComplexMatrix(k2 * w * ws);
  };
  for (auto [n1, n2] : {std::pair<Index, Index>{1, 10}, {3, 7}, {5, 6}}) {
    const ComplexMatrix diff = t(n2) - t(n1);
    const double expected = oracle::svd_norm(dbig * diff - diff * dbig);
    const TailReport rep = diff_compact_tail(sys, n1, n2);
    CHECK(std::abs(rep.tail - expected) <= 1e-12);
    CHECK(rep.tail <= rep.bound * (1 + 1e-12));
  }
  CHECK_THROWS_AS(diff_compact_tail(sys, 4, 4), DomainError);
  CHECK_THROWS_AS(diff_compact_tail(sys, 1, 11), DomainError);
}

TEST_CASE("tails shrink along doubling pairs") {
  const AbsorptionSystem sys = system_for("pauli", 256);
  double previous = std::numeric_limits<double>::infinity();
  for (Index n : {16, 32, 64, 128}) {
    const TailReport rep = diff_compact_tail(sys, n, 2 * n);
    CHECK(rep.tail < previous);
    CHECK(rep.tail <= rep.bound);
    previous = rep.tail;
  }
}

TEST_CASE("module norm") {
  std::mt19937_64 rng(44);
  const ComplexMatrix g = oracle::random_psd(4, rng);
  const ComplexMatrix v = oracle::random_matrix(4, 2, rng);
  CHECK(module_norm(g, v) == doctest::Approx(std::sqrt(oracle::svd_norm(v.adjoint() * g * v))));
  CHECK(module_norm(ComplexMatrix::Identity(4, 4), v) == doctest::Approx(oracle::svd_norm(v)));
}
