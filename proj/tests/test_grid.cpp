#include <doctest.h>

#include <cmath>

#include "cmclab/grid.hpp"
#include "test_util.hpp"

using namespace cmclab;
using namespace cmclab::stencil;

TEST_CASE("make_grid rejects degenerate sizes") {
  CHECK_THROWS_AS(make_grid(0, 5, 0.1), Error);
  CHECK_THROWS_AS(make_grid(5, 5, 0.0), Error);
}

TEST_CASE("one-sided and centred stencils are exact on quadratics") {
  const Grid g = make_grid(9, 7, 0.125, -0.5, -0.25);
  ScalarField f(g);
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) {
      const double u = g.u(i), v = g.v(j);
      f(i, j) = 3.0 * u * u - 2.0 * u * v + v * v + u - 4.0 * v + 1.0;
    }
  }
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) {
      const double u = g.u(i), v = g.v(j);
      CHECK(d_u(f, i, j) == doctest::Approx(6.0 * u - 2.0 * v + 1.0).epsilon(1e-12));
      CHECK(d_v(f, i, j) == doctest::Approx(-2.0 * u + 2.0 * v - 4.0).epsilon(1e-12));
      CHECK(d_uu(f, i, j) == doctest::Approx(6.0).epsilon(1e-10));
      CHECK(d_vv(f, i, j) == doctest::Approx(2.0).epsilon(1e-10));
      const Complex dz = d_z(f, i, j);
      CHECK(dz.real() == doctest::Approx(0.5 * (6.0 * u - 2.0 * v + 1.0)).epsilon(1e-12));
      CHECK(dz.imag() == doctest::Approx(-0.5 * (-2.0 * u + 2.0 * v - 4.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("discrete Laplacian of a harmonic polynomial vanishes") {
  const Grid g = make_grid(41, 41, 0.025, -0.5, -0.5);
  ScalarField f(g);
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) f(i, j) = g.u(i) * g.u(i) - g.v(j) * g.v(j);
  }
  double sup = 0.0;
  for (int i = 1; i + 1 < g.n_u; ++i) {
    for (int j = 1; j + 1 < g.n_v; ++j) sup = std::max(sup, std::abs(laplacian(f, i, j)));
  }
  CHECK(sup <= 1e-8);
}

TEST_CASE("centred derivative converges at second order") {
  double err[2];
  for (int level = 0; level < 2; ++level) {
    const int n = level == 0 ? 41 : 81;
    const Grid g = make_grid(n, 5, 1.0 / (n - 1));
    ScalarField f(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 5; ++j) f(i, j) = std::sin(2.0 * g.u(i));
    }
    double e = 0.0;
    for (int i = 1; i + 1 < n; ++i) e = std::max(e, std::abs(d_u(f, i, 2) - 2.0 * std::cos(2.0 * g.u(i))));
    err[level] = e;
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("NormAccumulator and field_range") {
  NormAccumulator acc;
  for (double x : {1.0, -3.0, 2.0}) acc.add(x);
  CHECK(acc.sup() == 3.0);
  CHECK(acc.mean() == doctest::Approx(2.0));
  acc.add(std::nan(""));
  CHECK(std::isnan(acc.sup()));

  const Grid g = make_grid(3, 3, 1.0);
  ScalarField f(g);
  for (int k = 0; k < 9; ++k) f.values()[static_cast<std::size_t>(k)] = k;
  const Range all = field_range(f);
  CHECK(all.min == 0.0);
  CHECK(all.max == 8.0);
  const Range in = field_range(f, true);
  CHECK(in.min == 4.0);
  CHECK(in.max == 4.0);
}
