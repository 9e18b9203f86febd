#include <doctest.h>

#include <cmath>
#include <random>

#include "absorbtk/errors.hpp"
#include "absorbtk/halfline.hpp"

using namespace absorbtk;
using namespace absorbtk::halfline;

namespace {

double dirac_error(Index m) {
  const Grid grid = make_grid(10.0, m);
  const GridOperator d = build_dirac(grid);
  ComplexVector g(m), dg(m);
  for (Index j = 0; j < m; ++j) {
    const double t = grid.t(j + 1);
    g(j) = std::exp(-(t - 5) * (t - 5));
    dg(j) = Complex(0.0, -2.0 * (t - 5) * std::exp(-(t - 5) * (t - 5)));
  }
  return (d.matrix * g - dg).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("central-difference Dirac operator") {
  for (Index m : {63, 127, 255}) {
    const double ratio = dirac_error(m) / dirac_error(2 * m + 1);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
  const GridOperator d = build_dirac(make_grid(5.0, 20));
  CHECK(symmetry_residual(d) == 0.0);
  CHECK(d.matrix.nonZeros() == 2 * 19);
  CHECK_THROWS_AS(build_dirac(make_grid(5.0, 7)), DomainError);
  CHECK_THROWS_AS(make_grid(0.0, 20), DomainError);
  CHECK_THROWS_AS(make_grid(1.0, 0), DomainError);
}

TEST_CASE("grid geometry") {
  const Grid g = make_grid(3.0, 5);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.t(1) == doctest::Approx(0.5));
  CHECK(g.nodes()(4) == doctest::Approx(2.5));
}

TEST_CASE("default profile normalization") {
  // brute-force sup over a fine grid
  double sup = 0.0;
  for (int k = 1; k <= 2000000; ++k) {
    const double t = k * 5e-6;
    const double s = 1 + t * t;
    sup = std::max(sup, std::abs(t * (1 - t * t) / (s * s * s)));
  }
  CHECK(std::abs(default_profile_sup() - sup) <= 1e-9);
  const double c = default_profile_scale();
  CHECK(c * c * (0.25 + 2 * sup) == doctest::Approx(1.0).epsilon(1e-9));

  const Grid grid = make_grid(40.0, 3999);
  const Profile p = weight_profile(grid);
  CHECK(p.scale == doctest::Approx(c));
  CHECK(p.xi.maxCoeff() <= c / 2 + 1e-12);
  const double tl = grid.t(grid.M);
  CHECK(p.xi(0) < 0.02);
  CHECK(p.xi(grid.M - 1) == doctest::Approx(c * tl / (1 + tl * tl)));
  CHECK(p.xi(grid.M - 1) < p.xi(grid.M / 2));
  // derivative consistent with a finite difference of xi
  const Index j = 500;
  CHECK(std::abs((p.xi(j + 1) - p.xi(j - 1)) / (2 * grid.h()) - p.dxi(j)) <= 1e-4);
}

TEST_CASE("custom profiles are validated") {
  const Grid grid = make_grid(10.0, 20);
  ProfileSpec bad{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }};
  CHECK_THROWS_AS(weight_profile(grid, bad), DomainError);
  ProfileSpec missing{[](double t) { return 1.0 / (1.0 + t); }, {}};
  CHECK_THROWS_AS(weight_profile(grid, missing), DomainError);
  ProfileSpec good{[](double t) { return 1.0 / (1.0 + t); }, [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); }};
  CHECK(weight_profile(grid, good).xi(0) == doctest::Approx(1.0 / (1.0 + grid.h())));
}

TEST_CASE("lift apply against a dense level sum") {
  const Grid grid = make_grid(12.0, 119);
  const Profile prof = weight_profile(grid);
  const GridOperator d = build_dirac(grid);
  std::mt19937_64 rng(71);
  std::normal_distribution<double> n;
  ComplexVector g = ComplexVector::Zero(grid.M);
  for (Index j = 10; j < 100; ++j) g(j) = Complex(n(rng), n(rng));
  const Index levels = 37;
  ComplexVector expected = ComplexVector::Zero(grid.M);
  for (Index k = 1; k <= levels; ++k) {
    ComplexVector w(grid.M);
    for (Index j = 0; j < grid.M; ++j) {
      const double x2 = prof.xi(j) * prof.xi(j);
      w(j) = prof.xi(j) / std::sqrt((1 + k * x2) * (1 + (k - 1) * x2));
    }
    expected += w.cwiseProduct(d.matrix * w.cwiseProduct(g));
  }
  for (Execution ex : {Execution::Serial, Execution::Parallel}) {
    const ComplexVector out = halfline_lift_apply(grid, prof, levels, g, ex);
    CHECK((out - expected).norm() <= 1e-12 * expected.norm());
    // support grows by at most one node
    CHECK(out.head(9).norm() == 0.0);
    CHECK(out.tail(grid.M - 101).norm() == 0.0);
  }
  CHECK(halfline_lift_apply(grid, prof, levels, ComplexVector::Zero(grid.M)).norm() == 0.0);
  ComplexVector edge = g;
  edge(2) = 1.0;
  CHECK_THROWS_AS(halfline_lift_apply(grid, prof, levels, edge), DomainError);
  CHECK_THROWS_AS(halfline_lift_apply(grid, prof, 0, g), DomainError);
  CHECK_THROWS_AS(halfline_lift_apply(grid, prof, levels, ComplexVector::Zero(5)), DomainError);
}

TEST_CASE("level weights telescope") {
  const Grid grid = make_grid(20.0, 199);
  const Profile prof = weight_profile(grid);
  for (Index levels : {1, 10, 1000}) {
    const RealVector s = lift_weight_sum(prof, levels);
    for (Index j = 0; j < grid.M; j += 17) {
      const double x2 = prof.xi(j) * prof.xi(j);
      CHECK(std::abs(s(j) - x2 / (x2 + 1.0 / static_cast<double>(levels))) <= 1e-13);
    }
  }
}

TEST_CASE("lift apply converges to i d/dt on the bump") {
  const double coarse = lift_apply_error(20.0, 512, 512);
  const double fine = lift_apply_error(20.0, 2048, 2048);
  CHECK(fine < coarse);
  CHECK(fine < 0.05);
}

TEST_CASE("range defects") {
  const Grid grid = make_grid(30.0, 511);
  const GridOperator d = build_dirac(grid);
  std::mt19937_64 rng(72);
  std::normal_distribution<double> n;
  // a probe already in ran(d + i)
  ComplexVector g = ComplexVector::Zero(grid.M);
  for (Index j = 1; j < grid.M - 1; ++j) g(j) = Complex(n(rng), n(rng));
  SparseMatrix id(grid.M, grid.M);
  id.setIdentity();
  const ComplexVector u = (d.matrix + Complex(0, 1) * id) * g;
  CHECK(range_defect(d, Sign::Plus, u) <= 1e-8);

  const ComplexVector e = (-grid.nodes().array()).exp().matrix().cast<Complex>();
  CHECK(range_defect(d, Sign::Minus, e) >= 0.9);
  CHECK_THROWS_AS(range_defect(d, Sign::Plus, ComplexVector::Zero(grid.M)), DomainError);
  CHECK_THROWS_AS(range_defect(d, Sign::Plus, ComplexVector::Ones(3)), DomainError);
}

TEST_CASE("contrast ladder: plus defect shrinks, minus stays, regularized both shrink") {
  const auto rows = regularization_contrast(30.0, {256, 512, 1024});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].minus >= 0.9);
    CHECK(rows[i].reg_symmetry <= 1e-10);
    if (i > 0) {
      CHECK(rows[i].plus < rows[i - 1].plus);
      CHECK(rows[i].minus_reg < rows[i - 1].minus_reg);
    }
  }
}

TEST_CASE("regularizer weights") {
  const Grid grid = make_grid(10.0, 99);
  const Profile prof = weight_profile(grid);
  const RealVector limit = regularizer_weights(prof);
  for (Index j = 0; j < grid.M; ++j) CHECK(limit(j) == doctest::Approx(std::pow(prof.xi(j), 4)));
  const RealVector far = regularizer_weights(prof, 100000000);
  CHECK((far - limit).cwiseAbs().maxCoeff() <= 1e-8);
  const RealVector one = regularizer_weights(prof, 1);
  CHECK((one.array() <= limit.array() + 1e-15).all());
  const GridOperator reg = regularize(build_dirac(grid), limit);
  CHECK(symmetry_residual(reg) <= 1e-15);
  CHECK_THROWS_AS(regularize(build_dirac(grid), RealVector::Ones(3)), DomainError);
}

TEST_CASE("bump") {
  CHECK(bump(2.0) == 0.0);
  CHECK(bump(6.0) == 0.0);
  CHECK(bump(4.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(bump_derivative(4.0) == doctest::Approx(0.0));
  const double t = 3.1, e = 1e-6;
  CHECK(std::abs((bump(t + e) - bump(t - e)) / (2 * e) - bump_derivative(t)) <= 1e-7);
}
