#include <cmath>
#include <random>

#include "doctest.h"
#include "triboson/energy.hpp"
#include "triboson/error.hpp"

using namespace triboson;

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW(ModelParams::make(1, -1.0));
  CHECK_THROWS_AS(ModelParams::make(1, 1.0), InvalidInput);
  CHECK_THROWS_AS(ModelParams::make(1, 0.0), InvalidInput);
  CHECK_THROWS_AS(ModelParams::make(3, -1.0), InvalidInput);
}

TEST_CASE("dispersion") {
  CHECK(dispersion(Momentum{0.0}) == 0.0);
  CHECK(dispersion(Momentum{kPi}) == doctest::Approx(2.0));
  CHECK(dispersion(Momentum{kPi, kPi}) == doctest::Approx(4.0));
}

TEST_CASE("pair_energy examples") {
  CHECK(pair_energy(Momentum{0.0}, Momentum{0.0}) == 0.0);
  CHECK(pair_energy(Momentum{0.0}, Momentum{kPi}) == doctest::Approx(4.0));
  for (double p : {0.0, 0.3, -1.7, kPi}) CHECK(pair_energy(Momentum{kPi}, Momentum{p}) == doctest::Approx(2.0));
}

TEST_CASE("three_energy examples") {
  CHECK(three_energy(Momentum{0.0}, Momentum{0.0}, Momentum{0.0}) == 0.0);
  CHECK(three_energy(Momentum{0.0}, Momentum{kPi}, Momentum{kPi}) == doctest::Approx(4.0));
}

TEST_CASE("pair_band examples") {
  Interval b = pair_band(Momentum{0.0});
  CHECK(b.lo == 0.0);
  CHECK(b.hi == doctest::Approx(4.0));
  b = pair_band(Momentum{kPi});
  CHECK(b.lo == doctest::Approx(2.0));
  CHECK(b.hi == doctest::Approx(2.0));
  b = pair_band(Momentum{0.0, 0.0});
  CHECK(b.lo == 0.0);
  CHECK(b.hi == doctest::Approx(8.0));
}

TEST_CASE("three_band examples") {
  const Interval b = three_band(Momentum{0.0}, TorusGrid(1, 256));
  CHECK(b.lo == 0.0);
  // Maximum at p = q = 2pi/3: 3 eps(2pi/3) = 4.5.
  CHECK(b.hi == doctest::Approx(4.5).epsilon(1e-12));
  const Interval b2 = three_band(Momentum{kPi, kPi}, TorusGrid(2, 16));
  CHECK(b2.lo == doctest::Approx(3.0).epsilon(1e-14));
  // At K = pi (d=1) the top is 6, reached at p = q = pi.
  CHECK(three_band(Momentum{kPi}, TorusGrid(1, 64)).hi == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("energy properties on random momenta") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 500; ++trial) {
    for (int d : {1, 2}) {
      const Momentum p = d == 1 ? Momentum{u(rng)} : Momentum{u(rng), u(rng)};
      const Momentum k = d == 1 ? Momentum{u(rng)} : Momentum{u(rng), u(rng)};
      const double e = dispersion(p);
      CHECK(e >= 0.0);
      CHECK(e <= 2.0 * d);
      CHECK(e == doctest::Approx(dispersion(-p)).epsilon(1e-15));

      // k/2 on the representative, not re-wrapped.
      const Momentum half = Momentum::raw(d, k.components()).scaled(0.5);
      const double direct = dispersion(half - p) + dispersion(half + p);
      CHECK(std::abs(pair_energy(k, p) - direct) < 1e-14);
      CHECK(std::abs(pair_energy(k, p) - pair_energy(k, -p)) < 1e-15);
      CHECK(std::abs(pair_energy(k, p) - pair_band_min(k) - pair_excess(k, p)) < 1e-14);
      CHECK(pair_band(k).contains(pair_energy(k, p) + 1e-15));
    }
  }
}

TEST_CASE("three_energy is S3 invariant on grid triples") {
  std::mt19937_64 rng(17);
  for (int d : {1, 2}) {
    const TorusGrid g(d, 16);
    for (int trial = 0; trial < 300; ++trial) {
      const Momentum K = g.node(rng() % g.size()), p = g.node(rng() % g.size()), q = g.node(rng() % g.size());
      const double e = three_energy(K, p, q);
      CHECK(std::abs(e - three_energy(K, q, p)) < 1e-14);
      CHECK(std::abs(e - three_energy(K, q, K - p - q)) < 1e-14);
      CHECK(std::abs(e - three_energy(K, K - p - q, p)) < 1e-14);
    }
  }
}

TEST_CASE("three_band lower edge is the grid minimum up to O(h^2)") {
  for (double K0 : {0.0, 0.4, 1.3, kPi}) {
    const Momentum K{K0};
    double prev_gap = INFINITY;
    for (int n : {16, 32, 64}) {
      const TorusGrid g(1, n);
      double m = INFINITY;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) m = std::min(m, three_energy(K, g.node(i), g.node(j)));
      const double lo = three_band_min(K);
      CHECK(lo <= m + 1e-14);
      CHECK(m - lo <= 3.0 * g.spacing() * g.spacing());
      CHECK(m - lo <= prev_gap + 1e-14);
      prev_gap = m - lo;
    }
  }
}
