#include <cmath>

#include "doctest.h"
#include "triboson/error.hpp"
#include "triboson/twobody.hpp"

using namespace triboson;

namespace {
const ModelParams kMu1{1, -1.0};
}

TEST_CASE("pair_integral examples") {
  CHECK(std::abs(pair_integral(Momentum{0.0}, -1.0, TorusGrid(1, 64)) - 0.4472135955) < 1e-10);
  CHECK(pair_integral(Momentum{kPi}, 1.0, TorusGrid(1, 16)) == doctest::Approx(1.0).epsilon(1e-15));
  const TorusGrid g(1, 32);
  const double a = pair_integral(Momentum{0.3}, -1e3, g);
  const double b = pair_integral(Momentum{0.3}, -1e6, g);
  CHECK(a > b);
  CHECK(b > 0.0);
  CHECK(b < 1.1e-6);
}

TEST_CASE("pair_integral domain") {
  const TorusGrid g(1, 16);
  CHECK_THROWS_AS(pair_integral(Momentum{0.0}, 0.0, g), DomainError);
  CHECK_THROWS_AS(pair_integral(Momentum{0.0}, 1.0, g), DomainError);
  CHECK_THROWS_AS(pair_integral(Momentum{0.0}, -1e-10, g), DomainError);
}

TEST_CASE("pair_integral is positive and increasing in z") {
  for (int d : {1, 2}) {
    const TorusGrid g(d, 16);
    const Momentum k = Momentum::uniform(d, 0.9);
    double prev = 0.0;
    for (double z = pair_band_min(k) - 5.0; z < pair_band_min(k) - 0.01; z += 0.1) {
      const double v = pair_integral(k, z, g);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("closed-form limit integral matches fine quadrature") {
  for (double k0 : {0.0, 0.7, 2.5}) {
    const Momentum k1{k0};
    const double z1 = pair_band_min(k1) - 0.3;
    CHECK(std::abs(pair_integral_limit(k1, z1) - pair_integral(k1, z1, TorusGrid(1, 512))) < 1e-12);
    const Momentum k2{k0, 0.4};
    const double z2 = pair_band_min(k2) - 0.3;
    CHECK(std::abs(pair_integral_limit(k2, z2) - pair_integral(k2, z2, TorusGrid(2, 256))) < 1e-10);
  }
}

TEST_CASE("determinant examples") {
  CHECK(std::abs(determinant(Momentum{0.0}, 2.0 - std::sqrt(5.0), kMu1, TorusGrid(1, 128))) < 1e-9);
  for (double k0 : {0.0, 1.0, kPi}) {
    const Momentum k{k0};
    const double v = determinant(k, pair_band(k).lo - 100.0, kMu1, TorusGrid(1, 32));
    CHECK(v > 0.98);
    CHECK(v < 1.0);
  }
  const ModelParams tiny{1, -1e-9};
  CHECK(determinant(Momentum{0.0}, -1.0, tiny, TorusGrid(1, 32)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("determinant is strictly decreasing in z") {
  const TorusGrid g(1, 32);
  double prev = INFINITY;
  for (double z = -3.0; z < -0.01; z += 0.05) {
    const double v = determinant(Momentum{0.0}, z, kMu1, g);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("eigenvalue examples") {
  const TorusGrid start(1, 16);
  CHECK(std::abs(eigenvalue(Momentum{0.0}, kMu1, start) - (2.0 - std::sqrt(5.0))) < 1e-9);
  CHECK(std::abs(eigenvalue(Momentum{0.0}, kMu1, start) + 0.2360679775) < 1e-9);
  CHECK(std::abs(eigenvalue(Momentum{kPi}, kMu1, start) - 1.0) < 1e-12);
  const TorusGrid g(1, 64);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(eigenvalue(g.node(i), kMu1, start) == eigenvalue(g.node(g.neg(i)), kMu1, start));
}

TEST_CASE("closed_form_1d") {
  CHECK(closed_form_1d(Momentum{0.0}, kMu1) == doctest::Approx(2.0 - std::sqrt(5.0)));
  CHECK(closed_form_1d(Momentum{0.0}, ModelParams{1, -2.0}) == doctest::Approx(2.0 - std::sqrt(8.0)));
  CHECK(closed_form_1d(Momentum{kPi}, kMu1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(closed_form_1d(Momentum{0.0, 0.0}, ModelParams{2, -1.0}), InvalidInput);
}

TEST_CASE("d=2 closed-form route agrees with grid doubling at mu=-2") {
  const ModelParams p{2, -2.0};
  for (double k0 : {0.0, 0.8, 2.0}) {
    const Momentum k{k0, 0.3};
    const double limit = eigenvalue(k, p, TorusGrid(2, 16));
    double prev = grid_eigenvalue(k, p, TorusGrid(2, 64));
    const double fine = grid_eigenvalue(k, p, TorusGrid(2, 256));
    CHECK(std::abs(fine - limit) < std::abs(prev - limit) + 1e-15);
    CHECK(std::abs(fine - limit) < 1e-6);
  }
}

TEST_CASE("d=2 mu=-0.5 level sits 3.9e-10 below the band") {
  const ModelParams p{2, -0.5};
  const double e = eigenvalue(Momentum{0.0, 0.0}, p, TorusGrid(2, 16));
  CHECK(e < 0.0);
  CHECK(e == doctest::Approx(-3.8916e-10).epsilon(1e-3));
}

TEST_CASE("solve_pair reports its quadrature") {
  const PairLevel l = solve_pair(Momentum{0.5}, kMu1, TorusGrid(1, 16));
  CHECK(l.converged);
  CHECK(l.quadrature_n >= 32);
  CHECK(l.achieved_tol < 1e-9);
  const PairLevel l2 = solve_pair(Momentum{0.5, 0.5}, ModelParams{2, -1.0}, TorusGrid(2, 16));
  CHECK(l2.quadrature_n == 0);
  CHECK(l2.converged);
}

TEST_CASE("eigenvalue lies below the band and is monotone in the coupling") {
  const TorusGrid start(1, 16);
  for (int d : {1, 2}) {
    const TorusGrid kg(d, 8);
    for (std::size_t i = 0; i < kg.size(); ++i) {
      const Momentum k = kg.node(i);
      double prev = -INFINITY;
      for (double mu : {-5.0, -2.0, -1.0, -0.5}) {
        const double e = eigenvalue(k, ModelParams{d, mu}, TorusGrid(d, 16));
        CHECK(e < pair_band(k).lo);
        CHECK(e > prev);
        prev = e;
      }
    }
  }
}

TEST_CASE("minimum at k = 0") {
  for (int d : {1, 2}) {
    const ModelParams p{d, -1.0};
    const TorusGrid g(d, d == 1 ? 64 : 16);
    const double e0 = eigenvalue(Momentum::zero(d), p, g);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(eigenvalue(g.node(i), p, g) > e0);
  }
}

TEST_CASE("grid convergence is geometric") {
  const Momentum k{0.4};
  std::vector<double> e;
  for (int n = 32; n <= 256; n *= 2) e.push_back(grid_eigenvalue(k, kMu1, TorusGrid(1, n)));
  const double d1 = std::abs(e[1] - e[0]), d2 = std::abs(e[2] - e[1]);
  CHECK(d2 < 0.1 * d1 + 1e-15);
}

TEST_CASE("determinant vanishes at the grid eigenvalue") {
  const TorusGrid g(1, 64);
  for (double k0 : {0.0, 1.0, 2.5}) {
    const Momentum k{k0};
    const double e = grid_eigenvalue(k, kMu1, g, 1e-13);
    CHECK(std::abs(determinant(k, e, kMu1, g)) < 1e-11);
  }
}

TEST_CASE("eigenfunction") {
  for (double k0 : {0.0, 0.9}) {
    const TorusGrid g(1, 64);
    const TwoBodyLevel l = eigenfunction(Momentum{k0}, kMu1, g);
    double norm = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(l.eigenfunction[i] > 0.0);
      CHECK(l.eigenfunction[i] == doctest::Approx(l.eigenfunction[g.neg(i)]).epsilon(1e-15));
      norm += l.eigenfunction[i] * l.eigenfunction[i] * g.weight();
    }
    CHECK(std::abs(norm - 1.0) < 1e-10);
    CHECK(eigen_residual(l, kMu1) < 1e-8);
    CHECK(l.energy < pair_band(l.k).lo);
  }
  const TorusGrid g2(2, 16);
  const TwoBodyLevel l2 = eigenfunction(Momentum{0.3, -0.5}, ModelParams{2, -2.0}, g2);
  CHECK(eigen_residual(l2, ModelParams{2, -2.0}) < 1e-8);
}
