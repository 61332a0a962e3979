#include "triboson/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "triboson/error.hpp"
#include "triboson/numerics.hpp"

namespace triboson {

namespace {

double sq(double x) { return x * x; }

double golden_max(const std::function<double(double)>& f, double a, double b, double* best) {
  double neg = 0.0;
  const double x = golden_section_min([&](double t) { return -f(t); }, a, b, 1e-12, &neg);
  *best = -neg;
  return x;
}

}  // namespace

ModelParams ModelParams::make(int dim, double mu) {
  if (dim != 1 && dim != 2) throw InvalidInput("ModelParams: dimension must be 1 or 2");
  if (!(mu < 0.0) || !std::isfinite(mu))
    throw InvalidInput("ModelParams: coupling must be negative, got " + std::to_string(mu));
  return ModelParams{dim, mu};
}

double dispersion(const Momentum& p) {
  double s = 0.0;
  for (int i = 0; i < p.dim(); ++i) s += 2.0 * sq(std::sin(0.5 * p[i]));
  return s;
}

double pair_energy(const Momentum& k, const Momentum& p) {
  double s = 0.0;
  for (int i = 0; i < k.dim(); ++i) s += 2.0 - 2.0 * std::cos(0.5 * k[i]) * std::cos(p[i]);
  return s;
}

double pair_band_min(const Momentum& k) {
  double s = 0.0;
  for (int i = 0; i < k.dim(); ++i) s += 4.0 * sq(std::sin(0.25 * k[i]));
  return s;
}

double pair_excess(const Momentum& k, const Momentum& p) {
  double s = 0.0;
  for (int i = 0; i < k.dim(); ++i) s += 4.0 * std::cos(0.5 * k[i]) * sq(std::sin(0.5 * p[i]));
  return s;
}

double three_energy(const Momentum& K, const Momentum& p, const Momentum& q) {
  return dispersion(K - p - q) + dispersion(p) + dispersion(q);
}

Interval pair_band(const Momentum& k) {
  double hi = 0.0;
  for (int i = 0; i < k.dim(); ++i) hi += 2.0 * (1.0 + std::cos(0.5 * k[i]));
  return {pair_band_min(k), hi};
}

double three_band_min(const Momentum& K) { return 3.0 * dispersion(K.scaled(1.0 / 3.0)); }

Interval three_band(const Momentum& K, const TorusGrid& grid) {
  if (K.dim() != grid.dim()) throw InvalidInput("three_band: dimension mismatch");
  const int d = K.dim();

  // E separates over axes, so the maximum is the sum of per-axis maxima; the
  // grid search still runs over the full (p,q) product as the contract asks.
  std::size_t best_p = 0, best_q = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Momentum p = grid.node(i);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double e = three_energy(K, p, grid.node(j));
      if (e > best) {
        best = e;
        best_p = i;
        best_q = j;
      }
    }
  }

  std::array<double, 4> x{};  // p components then q components
  const Momentum p0 = grid.node(best_p), q0 = grid.node(best_q);
  for (int i = 0; i < d; ++i) {
    x[static_cast<std::size_t>(i)] = p0[i];
    x[static_cast<std::size_t>(d + i)] = q0[i];
  }
  auto energy_at = [&](const std::array<double, 4>& v) {
    const Momentum p = Momentum::raw(d, std::span<const double>(v.data(), static_cast<std::size_t>(d)));
    const Momentum q = Momentum::raw(d, std::span<const double>(v.data() + d, static_cast<std::size_t>(d)));
    return three_energy(K, p, q);
  };
  const double h = grid.spacing();
  double refined = best;
  for (int cycle = 0; cycle < 6; ++cycle) {
    const double before = refined;
    for (int c = 0; c < 2 * d; ++c) {
      auto line = [&](double t) {
        auto v = x;
        v[static_cast<std::size_t>(c)] = t;
        return energy_at(v);
      };
      double val = 0.0;
      const double xc = x[static_cast<std::size_t>(c)];
      const double t = golden_max(line, xc - h, xc + h, &val);
      if (val > refined) {
        refined = val;
        x[static_cast<std::size_t>(c)] = t;
      }
    }
    if (refined - before < 1e-15) break;
  }

  double candidate = -1.0;
  const int combos = d == 1 ? 3 : 9;
  for (int m = 0; m < combos; ++m) {
    std::array<double, 2> c{(K[0] + kTwoPi * (m % 3)) / 3.0, 0.0};
    if (d == 2) c[1] = (K[1] + kTwoPi * (m / 3)) / 3.0;
    candidate = std::max(candidate, 3.0 * dispersion(Momentum::raw(d, std::span<const double>(c.data(), static_cast<std::size_t>(d)))));
  }

  return {three_band_min(K), std::max(refined, candidate)};
}

}  // namespace triboson
