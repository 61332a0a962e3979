#include <cmath>
#include <random>

#include "doctest.h"
#include "triboson/energy.hpp"
#include "triboson/error.hpp"
#include "triboson/grid.hpp"

using namespace triboson;

TEST_CASE("make_grid nodes and weights") {
  const TorusGrid g = make_grid(1, 8);
  CHECK(g.size() == 8);
  CHECK(g.weight() == 0.125);
  std::vector<double> nodes;
  for (std::size_t i = 0; i < g.size(); ++i) nodes.push_back(g.node(i)[0]);
  std::sort(nodes.begin(), nodes.end());
  const std::vector<double> want{-0.75 * kPi, -0.5 * kPi, -0.25 * kPi, 0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
  for (std::size_t i = 0; i < 8; ++i) CHECK(nodes[i] == doctest::Approx(want[i]).epsilon(1e-15));

  const TorusGrid g2 = make_grid(2, 8);
  CHECK(g2.size() == 64);
  CHECK(g2.weight() == 1.0 / 64.0);

  CHECK_THROWS_AS(make_grid(1, 7), InvalidInput);
  CHECK_THROWS_AS(make_grid(1, 6), InvalidInput);
  CHECK_THROWS_AS(make_grid(3, 8), InvalidInput);
}

TEST_CASE("wrap") {
  CHECK(wrap(std::vector<double>{1.5 * kPi})[0] == doctest::Approx(-0.5 * kPi));
  CHECK(wrap(std::vector<double>{-kPi})[0] == doctest::Approx(kPi));
  const Momentum m = wrap(std::vector<double>{kTwoPi, 0.0});
  CHECK(std::abs(m[0]) < 1e-15);
  CHECK(m[1] == 0.0);
}

TEST_CASE("wrapped components always lie in (-pi, pi]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const Momentum m{u(rng), u(rng)};
    for (int k = 0; k < 2; ++k) {
      CHECK(m[k] > -kPi);
      CHECK(m[k] <= kPi);
    }
  }
}

TEST_CASE("refine keeps the old nodes") {
  for (int d : {1, 2}) {
    const TorusGrid g(d, 8);
    const TorusGrid f = refine(g);
    CHECK(f.n() == 16);
    CHECK(f.dim() == d);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(f.locate(g.node(i)));
  }
}

TEST_CASE("grid nodes form a group") {
  for (int d : {1, 2}) {
    const TorusGrid g(d, 8);
    for (std::size_t a = 0; a < g.size(); ++a) {
      std::size_t idx = 0;
      REQUIRE(g.locate(-g.node(a), &idx));
      CHECK(idx == g.neg(a));
      for (std::size_t b = 0; b < g.size(); ++b) {
        REQUIRE(g.locate(g.node(a) + g.node(b), &idx));
        CHECK(idx == g.add(a, b));
        REQUIRE(g.locate(g.node(a) - g.node(b), &idx));
        CHECK(idx == g.sub(a, b));
      }
    }
  }
}

TEST_CASE("integrate: normalization and trigonometric exactness") {
  const TorusGrid g1(1, 16);
  CHECK(integrate([](const Momentum&) { return 1.0; }, g1) == 1.0);
  CHECK(std::abs(integrate([](const Momentum& p) { return std::cos(p[0]); }, g1)) < 1e-15);
  for (int m = 1; m < 16; ++m) {
    CHECK(std::abs(integrate([m](const Momentum& p) { return std::cos(m * p[0]); }, g1)) < 1e-14);
    CHECK(std::abs(integrate([m](const Momentum& p) { return std::sin(m * p[0]); }, g1)) < 1e-14);
  }
  const TorusGrid g2(2, 8);
  CHECK(integrate([](const Momentum&) { return 1.0; }, g2) == 1.0);
  for (int m1 = 0; m1 < 8; ++m1)
    for (int m2 = 0; m2 < 8; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      CHECK(std::abs(integrate([&](const Momentum& p) { return std::cos(m1 * p[0] + m2 * p[1]); }, g2)) < 1e-14);
    }
}

TEST_CASE("integrate: Watson integral") {
  const TorusGrid g(1, 64);
  const Momentum k0{0.0};
  const double v = integrate([&](const Momentum& p) { return 1.0 / (pair_energy(k0, p) + 1.0); }, g);
  CHECK(std::abs(v - 1.0 / std::sqrt(5.0)) < 1e-10);
  CHECK(std::abs(v - 0.4472135955) < 1e-10);
}

TEST_CASE("integrate: geometric convergence under doubling") {
  const Momentum k{0.7};
  auto g = [&](const Momentum& p) { return 1.0 / (pair_energy(k, p) + 0.3); };
  std::vector<double> diffs;
  for (int n = 8; n <= 64; n *= 2) diffs.push_back(std::abs(integrate(g, TorusGrid(1, n)) - integrate(g, TorusGrid(1, 2 * n))));
  for (std::size_t i = 1; i < diffs.size(); ++i)
    if (diffs[i - 1] > 1e-14) CHECK(diffs[i] < 0.5 * diffs[i - 1]);
}

TEST_CASE("integrate names a non-finite node") {
  const TorusGrid g(1, 8);
  CHECK_THROWS_AS(integrate([](const Momentum& p) { return 1.0 / p[0]; }, g), DomainError);
}
