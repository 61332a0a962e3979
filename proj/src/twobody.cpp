#include "triboson/twobody.hpp"

#include <boost/math/special_functions/ellint_rf.hpp>
#include <cmath>
#include <functional>
#include <string>

#include "triboson/error.hpp"
#include "triboson/numerics.hpp"

namespace triboson {

namespace {

constexpr double kBandMargin = 1e-9;
constexpr int kCapDim1 = 4096;

std::vector<double> excess_table(const Momentum& k, const TorusGrid& grid) {
  std::vector<double> x(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) x[i] = pair_excess(k, grid.node(i));
  return x;
}

double mean_inverse(const std::vector<double>& excess, double gap) {
  double s = 0.0;
  for (double x : excess) s += 1.0 / (x + gap);
  return s / static_cast<double>(excess.size());
}

/// n -> infinity pair integral written in terms of the gap g = E_min(k) - z.
double limit_integral_gap(const Momentum& k, double g) {
  if (k.dim() == 1) {
    const double b = 2.0 * std::cos(0.5 * k[0]);
    return 1.0 / std::sqrt(g * (g + 2.0 * b));
  }
  const double b1 = 2.0 * std::cos(0.5 * k[0]);
  const double b2 = 2.0 * std::cos(0.5 * k[1]);
  // A = 4 - z = g + b1 + b2;  A^2 - (b1-b2)^2 = (g + 2 b1)(g + 2 b2).
  const double den = (g + 2.0 * b1) * (g + 2.0 * b2);
  const double one_minus_m = g * (g + 2.0 * b1 + 2.0 * b2) / den;
  const double kk = boost::math::ellint_rf(0.0, one_minus_m, 1.0);
  return 2.0 / kPi * kk / std::sqrt(den);
}

}  // namespace

// I(g) <= 1/g puts g = 2|mu| on the positive side; the lower end is found by
// shrinking geometrically until the determinant turns negative.
double gap_root(const std::function<double(double)>& integral, double mu, double tol) {
  auto det = [&](double g) { return 1.0 + mu * integral(g); };
  const double g_hi = 2.0 * std::abs(mu);
  double g_lo = g_hi;
  double upper = g_hi;
  while (det(g_lo) >= 0.0) {
    upper = g_lo;
    g_lo *= 0.1;
    if (g_lo < 1e-300) throw BracketError("pair root lies closer to the band edge than double precision resolves");
  }
  const double root_tol = std::max(std::min(1e-3 * tol, 1e-9 * g_lo), 1e-300);
  return find_root_monotone(det, g_lo, upper, RootOptions{.tol = root_tol});
}

double pair_integral(const Momentum& k, double z, const TorusGrid& grid) {
  if (k.dim() != grid.dim()) throw InvalidInput("pair_integral: dimension mismatch");
  const double g = pair_band_min(k) - z;
  if (!(g > kBandMargin))
    throw DomainError("pair_integral: z = " + std::to_string(z) + " is not below the pair band");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += 1.0 / (pair_excess(k, grid.node(i)) + g);
  return s / static_cast<double>(grid.size());
}

double pair_integral_limit(const Momentum& k, double z) {
  const double g = pair_band_min(k) - z;
  if (!(g > kBandMargin))
    throw DomainError("pair_integral_limit: z = " + std::to_string(z) + " is not below the pair band");
  return limit_integral_gap(k, g);
}

double pair_integral_limit_gap(const Momentum& k, double gap) {
  if (!(gap > 0.0)) throw DomainError("pair_integral_limit_gap: gap must be positive");
  return limit_integral_gap(k, gap);
}

double determinant(const Momentum& k, double z, const ModelParams& params, const TorusGrid& grid) {
  return 1.0 + params.mu * pair_integral(k, z, grid);
}

double grid_eigenvalue(const Momentum& k, const ModelParams& params, const TorusGrid& grid,
                       double tol) {
  const auto excess = excess_table(k, grid);
  const double g = gap_root([&](double gap) { return mean_inverse(excess, gap); }, params.mu, tol);
  return pair_band_min(k) - g;
}

PairLevel solve_pair(const Momentum& k, const ModelParams& params, const TorusGrid& start,
                     double tol) {
  if (k.dim() != params.dim || start.dim() != params.dim)
    throw InvalidInput("solve_pair: dimension mismatch");
  if (!(tol > 0.0)) throw InvalidInput("solve_pair: tolerance must be positive");

  const double emin = pair_band_min(k);
  auto limit_route = [&] {
    const double g = gap_root([&](double gap) { return limit_integral_gap(k, gap); }, params.mu, tol);
    return emin - g;
  };

  PairLevel level;
  if (params.dim == 2) {
    level.energy = limit_route();
    level.achieved_tol = 1e-3 * tol;
    level.quadrature_n = 0;
    level.converged = true;
    return level;
  }

  TorusGrid grid = start;
  double previous = grid_eigenvalue(k, params, grid, 1e-3 * tol);
  double change = 0.0;
  while (2 * grid.n() <= kCapDim1) {
    grid = refine(grid);
    const double current = grid_eigenvalue(k, params, grid, 1e-3 * tol);
    change = std::abs(current - previous);
    previous = current;
    if (change < tol) {
      level.energy = current;
      level.achieved_tol = change;
      level.quadrature_n = grid.n();
      level.converged = true;
      return level;
    }
  }
  // Quadrature cap reached (|mu| very small): fall back to the closed-form integral.
  level.energy = limit_route();
  level.achieved_tol = change;
  level.quadrature_n = 0;
  level.converged = false;
  return level;
}

double eigenvalue(const Momentum& k, const ModelParams& params, const TorusGrid& start, double tol) {
  return solve_pair(k, params, start, tol).energy;
}

double closed_form_1d(const Momentum& k, const ModelParams& params) {
  if (params.dim != 1 || k.dim() != 1) throw InvalidInput("closed_form_1d: only defined for d = 1");
  const double c = std::cos(0.5 * k[0]);
  return 2.0 - std::sqrt(params.mu * params.mu + 4.0 * c * c);
}

TwoBodyLevel eigenfunction(const Momentum& k, const ModelParams& params, const TorusGrid& grid) {
  TwoBodyLevel level;
  level.k = k;
  level.grid_n = grid.n();
  level.energy = grid_eigenvalue(k, params, grid);
  const double gap = pair_band_min(k) - level.energy;

  level.eigenfunction.resize(grid.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = 1.0 / (pair_excess(k, grid.node(i)) + gap);
    level.eigenfunction[i] = v;
    norm2 += v * v;
  }
  norm2 /= static_cast<double>(grid.size());
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& v : level.eigenfunction) v *= scale;
  // f = mu c / (E_k - e) with mu < 0 and f > 0 means c < 0.
  level.normalizer = scale / params.mu;
  return level;
}

double eigen_residual(const TwoBodyLevel& level, const ModelParams& params) {
  const TorusGrid grid(level.k.dim(), level.grid_n);
  const auto& f = level.eigenfunction;
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(f.size());
  double r2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = (pair_energy(level.k, grid.node(i)) - level.energy) * f[i] + params.mu * mean;
    r2 += r * r;
  }
  return std::sqrt(r2 / static_cast<double>(f.size()));
}

}  // namespace triboson
