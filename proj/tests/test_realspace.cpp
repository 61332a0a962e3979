#include <cmath>

#include "doctest.h"
#include "triboson/error.hpp"
#include "triboson/realspace.hpp"
#include "triboson/twobody.hpp"

using namespace triboson;

TEST_CASE("constant and cosine tables") {
  const TorusGrid g(1, 16);
  const CoefficientTable one = lattice_coefficients(std::vector<double>(16, 1.0), g, 4);
  CHECK(std::abs(one.at({0}) - 1.0) < 1e-15);
  for (int x = 1; x <= 4; ++x) CHECK(std::abs(one.at({x})) < 1e-15);

  std::vector<double> c(16);
  for (std::size_t i = 0; i < 16; ++i) c[i] = std::cos(g.node(i)[0]);
  const CoefficientTable cc = lattice_coefficients(c, g, 3);
  CHECK(std::abs(cc.at({1}) - 0.5) < 1e-15);
  CHECK(std::abs(cc.at({-1}) - 0.5) < 1e-15);
  CHECK(std::abs(cc.at({0})) < 1e-15);
  CHECK(std::abs(cc.at({2})) < 1e-15);
}

TEST_CASE("Parseval at full cutoff") {
  const TorusGrid g(2, 8);
  std::vector<double> f(g.size());
  double l2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    f[i] = std::exp(std::cos(g.node(i)[0]) - 0.3 * std::sin(g.node(i)[1]));
    l2 += f[i] * f[i] / static_cast<double>(g.size());
  }
  // R = n/2 double-counts the Nyquist sites; R = n/2 - 1 misses them. Bracket the norm.
  auto sum_sq = [&](int R) {
    const CoefficientTable t = lattice_coefficients(f, g, R);
    double s = 0.0;
    for (const auto& v : t.values) s += std::norm(v);
    return s;
  };
  CHECK(sum_sq(3) <= l2 + 1e-12);
  CHECK(sum_sq(4) >= l2 - 1e-12);
}

TEST_CASE("pair tables use 2d coordinates") {
  const TorusGrid g(1, 8);
  const CoefficientTable t = lattice_coefficients(std::vector<double>(64, 1.0), g, 2);
  CHECK(t.coords == 2);
  CHECK(std::abs(t.at({0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(t.at({1, 0})) < 1e-15);
}

TEST_CASE("realspace errors") {
  const TorusGrid g(1, 8);
  CHECK_THROWS_AS(lattice_coefficients(std::vector<double>(8, 1.0), g, 5), InvalidInput);
  CHECK_THROWS_AS(lattice_coefficients(std::vector<double>(7, 1.0), g, 2), InvalidInput);
  const CoefficientTable one = lattice_coefficients(std::vector<double>(8, 1.0), g, 4);
  CHECK_THROWS_AS(decay_fit(one, 0, 4), DomainError);
  CHECK_THROWS_AS(decay_fit(one, 0, 2), InvalidInput);
  CHECK_THROWS_AS(two_body_decay_rate_1d(Momentum{kPi}, ModelParams{1, -1.0}), DomainError);
}

TEST_CASE("two-body decay rate") {
  const ModelParams p{1, -1.0};
  CHECK(two_body_decay_rate_1d(Momentum{0.0}, p) == doctest::Approx(std::acosh(std::sqrt(5.0) / 2.0)));
  double prev = 0.0;
  for (double mu : {-0.5, -1.0, -2.0, -4.0}) {
    const double r = two_body_decay_rate_1d(Momentum{0.5}, ModelParams{1, mu});
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("two-body eigenfunction decays at the predicted rate") {
  const ModelParams p{1, -1.0};
  const TorusGrid g(1, 128);
  const TwoBodyLevel l = eigenfunction(Momentum{0.0}, p, g);
  const DecayReport r = decay_fit(lattice_coefficients(l.eigenfunction, g, 20), 2, 16);
  CHECK(r.rate == doctest::Approx(two_body_decay_rate_1d(Momentum{0.0}, p)).epsilon(1e-3));
  CHECK(r.r2 > 0.9999);
}
