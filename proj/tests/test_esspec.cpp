#include <cmath>

#include "doctest.h"
#include "triboson/error.hpp"
#include "triboson/esspec.hpp"
#include "triboson/twobody.hpp"

using namespace triboson;

namespace {
const ModelParams kMu1{1, -1.0};
const double kE0 = 2.0 - std::sqrt(5.0);
}

TEST_CASE("IntervalUnion merge") {
  auto u = IntervalUnion::merge({{0.0, 1.0}, {-2.0, -1.0}});
  REQUIRE(u.parts.size() == 2);
  CHECK(u.parts[0].lo == -2.0);
  u = IntervalUnion::merge({{0.0, 1.0}, {0.5, 3.0}});
  REQUIRE(u.parts.size() == 1);
  CHECK(u.parts[0].hi == 3.0);
  CHECK(u.contains(2.0));
  CHECK_FALSE(u.contains(3.5));
}

TEST_CASE("channel_value examples") {
  const TorusGrid g(1, 16);
  CHECK(std::abs(channel_value(Momentum{0.0}, Momentum{0.0}, kMu1, g) - kE0) < 1e-9);
  const TorusGrid kg(1, 32);
  for (std::size_t i = 0; i < kg.size(); ++i)
    CHECK(channel_value(Momentum{0.0}, kg.node(i), kMu1, g) >= kE0 - 1e-12);
  for (double K0 : {0.0, 0.7, 2.0, kPi}) {
    const Momentum K{K0};
    CHECK(channel_value(K, K.scaled(2.0 / 3.0), kMu1, g) < three_band_min(K));
  }
}

TEST_CASE("channel_branch at K = 0") {
  const ChannelBranch b = channel_branch(Momentum{0.0}, kMu1, TorusGrid(1, 32));
  CHECK(std::abs(b.range.lo - kE0) < 1e-9);
  CHECK(std::abs(b.p_min[0]) < 1e-7);
  CHECK_FALSE(b.degenerate_minimum);
  CHECK(b.range.hi > b.range.lo);
}

TEST_CASE("channel_branch min property and refinement distance") {
  for (int d : {1, 2}) {
    const TorusGrid kg(d, d == 1 ? 16 : 8);
    const ModelParams p{d, -1.5};
    for (std::size_t i = 0; i < kg.size(); i += 3) {
      const Momentum K = kg.node(i);
      const ChannelBranch b = channel_branch(K, p, kg);
      CHECK(b.range.lo <= channel_value(K, K.scaled(2.0 / 3.0), p, TorusGrid(d, 16)) + 1e-12);
      double nearest = INFINITY;
      for (const auto& m : b.grid_minimizers) nearest = std::min(nearest, m.torus_distance(b.k_min));
      CHECK(nearest <= kg.spacing() * std::sqrt(static_cast<double>(d)) + 1e-12);
    }
  }
}

TEST_CASE("K = pi: mirror minimizers at weak coupling, single one at strong") {
  const ChannelBranch weak = channel_branch(Momentum{kPi}, ModelParams{1, -0.3}, TorusGrid(1, 32));
  CHECK(weak.degenerate_minimum);
  CHECK(weak.grid_minimizers.size() >= 2);
  const ChannelBranch strong = channel_branch(Momentum{kPi}, kMu1, TorusGrid(1, 32));
  CHECK_FALSE(strong.degenerate_minimum);
  CHECK(std::abs(std::abs(strong.k_min[0]) - kPi) < 1e-4);
  const ChannelBranch w2 = channel_branch(Momentum{kPi, kPi}, ModelParams{2, -1.0}, TorusGrid(2, 16));
  CHECK(w2.degenerate_minimum);
}

TEST_CASE("essential_spectrum examples") {
  const EssentialSpectrum es = essential_spectrum(Momentum{0.0}, kMu1, TorusGrid(1, 32));
  CHECK(std::abs(es.tau_ess - kE0) < 1e-9);
  CHECK(es.band.lo == 0.0);
  CHECK(es.tau_ess < es.band.lo);
  CHECK(es.union_set.parts.size() == (es.branch.hi < es.band.lo ? 2u : 1u));

  const EssentialSpectrum deep = essential_spectrum(Momentum{0.0}, ModelParams{1, -10.0}, TorusGrid(1, 32));
  CHECK(deep.branch.hi < deep.band.lo);
  CHECK(deep.union_set.parts.size() == 2);
}

TEST_CASE("tau_ess equals the pair level at K = 0") {
  for (int d : {1, 2}) {
    const ModelParams p{d, -2.0};
    const EssentialSpectrum es = essential_spectrum(Momentum::zero(d), p, TorusGrid(d, 16));
    CHECK(std::abs(es.tau_ess - eigenvalue(Momentum::zero(d), p, TorusGrid(d, 16))) < 1e-12);
  }
}

TEST_CASE("tau_ess below E_min on a K grid") {
  for (int d : {1, 2}) {
    const TorusGrid kg(d, 8);
    for (double mu : {-1.0, -2.0, -5.0}) {
      const ModelParams p{d, mu};
      for (std::size_t i = 0; i < kg.size(); ++i) {
        const Momentum K = kg.node(i);
        CHECK(channel_branch(K, p, kg).range.lo < three_band_min(K) - 1e-8);
      }
    }
  }
}

TEST_CASE("channel_determinant") {
  const TorusGrid g(1, 64);
  const Momentum K{0.6}, p{-0.4};
  const double z0 = grid_channel_level(K, p, kMu1, g);
  CHECK(std::abs(channel_determinant(K, p, z0, kMu1, g)) < 1e-12);
  // Spectator at rest, K = 0: reduces to the pair determinant.
  CHECK(channel_determinant(Momentum{0.0}, Momentum{0.0}, -0.7, kMu1, g) ==
        doctest::Approx(determinant(Momentum{0.0}, -0.7, kMu1, g)).epsilon(1e-13));
  // Continuum version vanishes on the converged branch.
  const double zc = eigenvalue(K - p, kMu1, TorusGrid(1, 16), 1e-12) + dispersion(p);
  CHECK(std::abs(channel_determinant_limit(K, p, zc, kMu1)) < 1e-8);
  CHECK_THROWS_AS(channel_determinant(K, p, 5.0, kMu1, g), DomainError);
}

TEST_CASE("channel_determinant positive below the discrete bottom") {
  for (int d : {1, 2}) {
    const TorusGrid g(d, d == 1 ? 32 : 8);
    const ModelParams p{d, -1.0};
    const Momentum K = Momentum::uniform(d, 0.25 * kPi);
    const double bottom = grid_channel_bottom(K, p, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(channel_determinant(K, g.node(i), bottom - 1e-9, p, g) > 0.0);
  }
}

TEST_CASE("quadratic_vanishing_check") {
  QuadraticCheck q = quadratic_vanishing_check(Momentum{0.0}, kMu1, TorusGrid(1, 32));
  CHECK(q.slope >= 1.9);
  CHECK(q.slope <= 2.1);
  CHECK(q.r2 > 0.999);
  CHECK(q.in_neighborhood);

  const ModelParams p2{2, -2.0};
  const QuadraticCheck a = quadratic_vanishing_check(Momentum{0.0, 0.0}, p2, TorusGrid(2, 16), 0);
  const QuadraticCheck b = quadratic_vanishing_check(Momentum{0.0, 0.0}, p2, TorusGrid(2, 16), 1);
  CHECK(a.slope >= 1.9);
  CHECK(a.slope <= 2.1);
  CHECK(std::abs(a.slope - b.slope) < 0.05);

  const QuadraticCheck c = quadratic_vanishing_check(Momentum{0.25 * kPi, 0.0}, p2, TorusGrid(2, 16), 1);
  const QuadraticCheck e = quadratic_vanishing_check(Momentum{0.25 * kPi, 0.0}, p2, TorusGrid(2, 16), 0);
  CHECK(std::abs(c.slope - e.slope) < 0.05);

  CHECK_FALSE(quadratic_vanishing_check(Momentum{2.5}, kMu1, TorusGrid(1, 32)).in_neighborhood);
  CHECK_THROWS_AS(quadratic_vanishing_check(Momentum{0.0}, kMu1, TorusGrid(1, 32), 1), InvalidInput);
}
