#pragma once

#include <functional>
#include <vector>

#include "triboson/energy.hpp"
#include "triboson/grid.hpp"

namespace triboson {

/// Solved two-body level e_mu(k) with the quadrature that produced it.
struct PairLevel {
  double energy = 0.0;
  /// |e_n - e_2n| at the accepted level, or the root tolerance for the closed-form route.
  double achieved_tol = 0.0;
  /// Points per axis of the accepted quadrature; 0 means the n -> infinity closed form.
  int quadrature_n = 0;
  bool converged = false;
};

/// Bound pair at fixed k on a fixed grid: eigenpair of the discretized h_mu(k).
struct TwoBodyLevel {
  Momentum k;
  int grid_n = 0;
  double energy = 0.0;
  /// Unit discrete L2 norm, strictly positive, indexed like the grid nodes.
  std::vector<double> eigenfunction;
  double normalizer = 0.0;
};

/// Positive root g of 1 + mu * integral(g) = 0, where integral is positive and
/// decreasing in g with integral(g) <= 1/g and integral(0+) = infinity.
/// Used with g = (bottom of the continuum) - z so that tiny gaps keep precision.
double gap_root(const std::function<double(double)>& integral, double mu, double tol);

/// Grid mean of q -> 1 / (pair_energy(k,q) - z). Throws DomainError unless
/// z < pair_band_min(k) - 1e-9.
double pair_integral(const Momentum& k, double z, const TorusGrid& grid);

/// Same integral in the n -> infinity limit, closed form: 1/sqrt(a^2-b^2) in d=1,
/// a complete elliptic integral of the first kind in d=2.
double pair_integral_limit(const Momentum& k, double z);

/// pair_integral_limit at z = pair_band_min(k) - gap; accurate for gaps down to ~1e-300.
double pair_integral_limit_gap(const Momentum& k, double gap);

/// 1 + mu * pair_integral(k, z, grid).
double determinant(const Momentum& k, double z, const ModelParams& params, const TorusGrid& grid);

/// Unique eigenvalue of h_mu(k) below the band, converged in the quadrature.
/// d=1 doubles `start` until |e_n - e_2n| < tol (cap n=4096); d=2 uses the
/// closed-form integral. Throws BracketError if no root can be bracketed,
/// which for mu < 0 and d <= 2 indicates a bug.
PairLevel solve_pair(const Momentum& k, const ModelParams& params, const TorusGrid& start,
                     double tol = 1e-9);

double eigenvalue(const Momentum& k, const ModelParams& params, const TorusGrid& start,
                  double tol = 1e-9);

/// Root of the fixed-grid determinant: the eigenvalue of h_mu(k) discretized on `grid`.
double grid_eigenvalue(const Momentum& k, const ModelParams& params, const TorusGrid& grid,
                       double tol = 1e-14);

/// d=1 only: 2 - sqrt(mu^2 + 4 cos^2(k/2)).
double closed_form_1d(const Momentum& k, const ModelParams& params);

/// Eigenfunction proportional to 1/(pair_energy(k,.) - e) on `grid`, with e the
/// grid eigenvalue, so the discrete residual vanishes to rounding.
TwoBodyLevel eigenfunction(const Momentum& k, const ModelParams& params, const TorusGrid& grid);

/// ||(h - e) f|| in the discrete L2 norm, h applied as pair_energy * f + mu * mean(f).
double eigen_residual(const TwoBodyLevel& level, const ModelParams& params);

}  // namespace triboson
