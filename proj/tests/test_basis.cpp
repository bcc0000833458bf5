#include <cmath>

#include <doctest.h>

#include "hindep/basis.hpp"

using namespace hindep;

namespace {

Eigen::VectorXd curve_of(const SampleGrid& grid, double (*f)(double)) {
  Eigen::VectorXd v(grid.num_points());
  for (int i = 0; i < v.size(); ++i) v(i) = f(grid.points(i));
  return v;
}

// Independent quadrature oracle: trapezoid sum written out longhand.
double trapezoid_oracle(const Eigen::VectorXd& values, const SampleGrid& grid) {
  const double delta = grid.spacing();
  double sum = 0.5 * (values(0) + values(values.size() - 1));
  for (int i = 1; i + 1 < values.size(); ++i) sum += values(i);
  return sum * delta;
}

}  // namespace

TEST_CASE("inner product of constant one with itself is exactly one") {
  for (int d : {2, 11, 101}) {
    const SampleGrid grid = SampleGrid::uniform(d);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(d);
    CHECK(inner_product(one, one, grid) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("inner product with the zero curve vanishes") {
  const SampleGrid grid = SampleGrid::uniform(31);
  CHECK(inner_product(Eigen::VectorXd::Ones(31), Eigen::VectorXd::Zero(31), grid) == 0.0);
}

TEST_CASE("inner product of t with t matches the quadrature oracle near 1/3") {
  const SampleGrid grid = SampleGrid::uniform(101);
  const Eigen::VectorXd t = grid.points;
  const double expected = trapezoid_oracle(t.cwiseProduct(t), grid);
  const double got = inner_product(t, t, grid);
  CHECK(got == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(got - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("inner product rejects mismatched grids") {
  const SampleGrid grid = SampleGrid::uniform(11);
  CHECK_THROWS_AS(inner_product(Eigen::VectorXd::Ones(10), Eigen::VectorXd::Ones(11), grid),
                  dimension_error);
}

TEST_CASE("positive semidefiniteness of the inner product") {
  const SampleGrid grid = SampleGrid::uniform(17);
  Eigen::VectorXd v(17);
  unsigned state = 12345;
  for (int i = 0; i < 17; ++i) {
    state = state * 1103515245u + 12345u;
    v(i) = static_cast<double>(state % 1000) / 500.0 - 1.0;
  }
  CHECK(inner_product(v, v, grid) >= 0.0);
}

TEST_CASE("constant curve loads only the first basis coefficient") {
  const SampleGrid grid = SampleGrid::uniform(101);
  const Eigen::VectorXd coeffs = basis_coefficients(Eigen::VectorXd(Eigen::VectorXd::Ones(101)), grid, 5);
  CHECK(coeffs(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 5; ++i) CHECK(std::abs(coeffs(i)) < 1e-3);
}

TEST_CASE("zero curve has all-zero coefficients") {
  const SampleGrid grid = SampleGrid::uniform(51);
  CHECK(basis_coefficients(Eigen::VectorXd(Eigen::VectorXd::Zero(51)), grid, 4).isZero(0.0));
}

TEST_CASE("sqrt(2) cos(2 pi t) projects onto the second basis function") {
  const SampleGrid grid = SampleGrid::uniform(201);
  const Eigen::VectorXd c =
      curve_of(grid, [](double t) { return std::sqrt(2.0) * std::cos(2.0 * M_PI * t); });
  const Eigen::VectorXd coeffs = basis_coefficients(c, grid, 3);
  CHECK(std::abs(coeffs(0)) < 1e-2);
  CHECK(coeffs(1) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(std::abs(coeffs(2)) < 1e-2);
}

TEST_CASE("basis coefficients are linear") {
  const SampleGrid grid = SampleGrid::uniform(101);
  const Eigen::VectorXd a = curve_of(grid, [](double t) { return std::exp(t); });
  const Eigen::VectorXd b = curve_of(grid, [](double t) { return std::sin(3.0 * t); });
  const double alpha = 1.7, beta = -0.4;
  const Eigen::VectorXd lhs = basis_coefficients(Eigen::VectorXd(alpha * a + beta * b), grid, 6);
  const Eigen::VectorXd rhs =
      alpha * basis_coefficients(a, grid, 6) + beta * basis_coefficients(b, grid, 6);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncated coefficient energy respects the curve norm") {
  const SampleGrid grid = SampleGrid::uniform(201);
  for (auto f : {+[](double t) { return std::exp(t); },
                 +[](double t) { return std::sin(3.0 * t) + 0.5 * t; },
                 +[](double t) { return t * t - t; }}) {
    const Eigen::VectorXd c = curve_of(grid, f);
    const Eigen::VectorXd coeffs = basis_coefficients(c, grid, 9);
    CHECK(coeffs.squaredNorm() <= inner_product(c, c, grid) + 1e-2);
  }
}

TEST_CASE("row-wise coefficients agree with the single-curve path") {
  const SampleGrid grid = SampleGrid::uniform(41);
  Eigen::MatrixXd curves(3, 41);
  curves.row(0) = curve_of(grid, [](double t) { return t; }).transpose();
  curves.row(1) = curve_of(grid, [](double t) { return std::cos(t); }).transpose();
  curves.row(2) = curve_of(grid, [](double t) { return std::exp(-t); }).transpose();
  const Eigen::MatrixXd all = basis_coefficients(curves, grid, 5);
  for (int r = 0; r < 3; ++r) {
    const Eigen::VectorXd one = basis_coefficients(Eigen::VectorXd(curves.row(r).transpose()), grid, 5);
    CHECK((all.row(r).transpose() - one).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("basis order bounds are enforced") {
  const SampleGrid grid = SampleGrid::uniform(11);
  CHECK_THROWS_AS(basis_coefficients(Eigen::VectorXd(Eigen::VectorXd::Ones(11)), grid, 1), parameter_error);
  CHECK_THROWS_AS(basis_coefficients(Eigen::VectorXd(Eigen::VectorXd::Ones(11)), grid, 12), parameter_error);
}

TEST_CASE("projection is the plain dot product") {
  Eigen::VectorXd coeffs(2);
  coeffs << 1.0, 2.0;
  Eigen::VectorXd e1(2), zero(2), l(2);
  e1 << 1.0, 0.0;
  zero << 0.0, 0.0;
  l << 3.0 / 5.0, 4.0 / 5.0;
  CHECK(project(coeffs, e1) == 1.0);
  CHECK(project(coeffs, zero) == 0.0);
  CHECK(project(coeffs, l) == doctest::Approx(2.2).epsilon(1e-15));
  CHECK_THROWS_AS(project(coeffs, Eigen::VectorXd::Ones(3)), dimension_error);
}

TEST_CASE("grid invariants are validated") {
  CHECK_THROWS_AS(SampleGrid::uniform(1), parameter_error);
  Eigen::VectorXd bad(3);
  bad << 0.0, 0.7, 1.0;
  CHECK_THROWS_AS(SampleGrid::from_points(bad), parameter_error);
  Eigen::VectorXd good = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
  CHECK(SampleGrid::from_points(good).num_points() == 5);
}
