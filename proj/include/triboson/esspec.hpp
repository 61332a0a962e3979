#pragma once

#include <vector>

#include "triboson/energy.hpp"
#include "triboson/grid.hpp"
#include "triboson/numerics.hpp"

namespace triboson {

/// Sorted, pairwise disjoint intervals.
struct IntervalUnion {
  std::vector<Interval> parts;

  /// Merges overlapping or touching intervals.
  static IntervalUnion merge(std::vector<Interval> pieces);
  bool contains(double x) const;
};

/// Range of the two-particle branch Z(K,k) = e(k) + eps(K-k) over k.
struct ChannelBranch {
  Interval range;
  /// Refined minimizer, pair convention (k) and spectator convention (p = K - k).
  Momentum k_min;
  Momentum p_min;
  Momentum k_max;
  /// Every strict local minimum of Z on the k-grid, as pair momenta.
  std::vector<Momentum> grid_minimizers;
  /// Two well separated refined minima agree within 1e-10 (e.g. d=1, K=pi).
  bool degenerate_minimum = false;
};

struct EssentialSpectrum {
  Momentum K;
  Interval branch;
  Interval band;
  IntervalUnion union_set;
  double tau_ess = 0.0;
  Momentum p_min;
  bool degenerate_minimum = false;
};

/// Z(K,k) = e(k) + eps(K-k). `grid` seeds the two-body quadrature.
double channel_value(const Momentum& K, const Momentum& k, const ModelParams& params,
                     const TorusGrid& grid, double tol = 1e-9);

/// Same with the two-body level taken from the n -> infinity pair integral.
double channel_value_limit(const Momentum& K, const Momentum& k, const ModelParams& params,
                           double tol = 1e-13);

/// Minimum and maximum of Z over `k_grid`, each polished by golden-section
/// coordinate search to 1e-8 in k.
ChannelBranch channel_branch(const Momentum& K, const ModelParams& params, const TorusGrid& k_grid,
                             double tol = 1e-9);

/// Branch from `grid`, three-particle band (grid maximum capped at 64 per axis in
/// d=1, 16 in d=2) and their union.
EssentialSpectrum essential_spectrum(const Momentum& K, const ModelParams& params,
                                     const TorusGrid& grid, double tol = 1e-9);

/// Discrete channel determinant 1 + mu * w * sum_t 1/(E(K;p,t) - z), summed
/// directly over the grid t. Throws DomainError unless z < min_t E(K;p,t).
double channel_determinant(const Momentum& K, const Momentum& p, double z,
                           const ModelParams& params, const TorusGrid& grid);

/// n -> infinity channel determinant, 1 + mu * pair_integral_limit(K-p, z - eps(p)).
double channel_determinant_limit(const Momentum& K, const Momentum& p, double z,
                                 const ModelParams& params);

/// Root in z of channel_determinant(K, p, ., grid): the discrete channel level at spectator p.
double grid_channel_level(const Momentum& K, const Momentum& p, const ModelParams& params,
                          const TorusGrid& grid, double tol = 1e-14);

/// Bottom of the discrete channel spectrum, min over grid p of grid_channel_level.
/// Below it the discrete determinant is positive at every node.
double grid_channel_bottom(const Momentum& K, const ModelParams& params, const TorusGrid& grid);

struct QuadraticCheck {
  double slope = 0.0;
  double r2 = 0.0;
  double tau_ess = 0.0;
  Momentum p_min;
  std::vector<double> radii;
  std::vector<double> values;
  /// |K|_inf <= pi/2; outside, the result is exploratory.
  bool in_neighborhood = true;
};

/// Samples the continuum determinant at z = tau_ess along p_min + r e_axis for
/// r in {1e-1, 3e-2, 1e-2, 3e-3, 1e-3} and fits log value against log r.
/// `grid` seeds the minimizer search. Throws DomainError naming r if a sample is <= 0.
QuadraticCheck quadratic_vanishing_check(const Momentum& K, const ModelParams& params,
                                         const TorusGrid& grid, int axis = 0);

}  // namespace triboson
