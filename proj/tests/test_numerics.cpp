#include <cmath>
#include <random>

#include "doctest.h"
#include "triboson/error.hpp"
#include "triboson/numerics.hpp"

using namespace triboson;

namespace {

SymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, u(rng));
  return a;
}

}  // namespace

TEST_CASE("sym_eigen small cases") {
  SymmetricMatrix id(3);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, 1.0);
  for (double l : sym_eigen(id).eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-15));

  SymmetricMatrix d(3);
  d.set(0, 0, 2.0);
  d.set(1, 1, -1.0);
  const auto ev = sym_eigenvalues(d);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(std::abs(ev[1]) < 1e-15);
  CHECK(ev[2] == doctest::Approx(2.0));

  SymmetricMatrix x(2);
  x.set(0, 1, 1.0);
  const auto e2 = sym_eigenvalues(x);
  CHECK(e2[0] == doctest::Approx(-1.0));
  CHECK(e2[1] == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen rejects non-finite entries") {
  SymmetricMatrix a(2);
  a.set(0, 1, NAN);
  CHECK_THROWS_AS(sym_eigen(a), InvalidInput);
  a.set(0, 1, INFINITY);
  CHECK_THROWS_AS(sym_eigenvalues(a), InvalidInput);
}

TEST_CASE("sym_eigen residual, orthonormality, trace on random matrices") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 40);
    const SymmetricMatrix a = random_symmetric(rng, n);
    CHECK(a.asymmetry() == 0.0);
    const EigenDecomposition e = sym_eigen(a);
    const double norm = a.max_abs() * static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += e.eigenvalues[j];
      if (j > 0) CHECK(e.eigenvalues[j - 1] <= e.eigenvalues[j]);
      const auto av = a.apply(e.eigenvectors[j]);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(av[i] - e.eigenvalues[j] * e.eigenvectors[j][i]));
      CHECK(r <= 1e-10 * norm);
      for (std::size_t k = j; k < n; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += e.eigenvectors[j][i] * e.eigenvectors[k][i];
        CHECK(std::abs(dot - (j == k ? 1.0 : 0.0)) <= 1e-10);
      }
    }
    CHECK(std::abs(sum - a.trace()) <= 1e-9 * static_cast<double>(n) * a.max_abs());
  }
}

TEST_CASE("sym_eigen is deterministic") {
  std::mt19937_64 rng(7);
  const SymmetricMatrix a = random_symmetric(rng, 25);
  CHECK(sym_eigenvalues(a) == sym_eigenvalues(a));
}

TEST_CASE("find_root_monotone") {
  CHECK(find_root_monotone([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(find_root_monotone([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(find_root_monotone([](double x) { return x + 5.0; }, 0.0, 2.0, 1e-12), BracketError);

  // Pure bisection path reaches the same root.
  RootOptions bis;
  bis.secant = false;
  bis.tol = 1e-13;
  CHECK(find_root_monotone([](double x) { return std::exp(x) - 3.0; }, 0.0, 2.0, bis) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("find_root_monotone on steep monotone functions") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = u(rng);
    // Steep near the root, like a determinant close to a band edge.
    auto f = [r](double x) { return std::cbrt(x - r) * 1e3; };
    const double x = find_root_monotone(f, 0.0, 1.0, 1e-12);
    CHECK(std::abs(x - r) <= 1e-11);
  }
}

TEST_CASE("golden_section_min") {
  double v = 0.0;
  const double x = golden_section_min([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, -1.0, 1.0, 1e-10, &v);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("linear_fit") {
  const std::vector<double> xs{0, 1, 2, 3, 4};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.0 * x + 1.0);
  LineFit f = linear_fit(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));

  const std::vector<double> flat(5, 3.0);
  f = linear_fit(xs, flat);
  CHECK(f.slope == 0.0);
  CHECK(f.r2 >= 0.0);
  CHECK(f.r2 <= 1.0);

  CHECK_THROWS_AS(linear_fit(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), InvalidInput);
  CHECK_THROWS_AS(linear_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InvalidInput);
}

TEST_CASE("linear_fit r2 stays in [0,1] on noise") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
      xs.push_back(i);
      ys.push_back(g(rng));
    }
    const LineFit f = linear_fit(xs, ys);
    CHECK(f.r2 >= 0.0);
    CHECK(f.r2 <= 1.0);
  }
}
