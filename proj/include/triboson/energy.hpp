#pragma once

#include "triboson/grid.hpp"

namespace triboson {

/// Dimension and (attractive) on-site coupling.
struct ModelParams {
  int dim = 1;
  double mu = -1.0;

  /// Validating constructor: dim in {1,2}, mu < 0.
  static ModelParams make(int dim, double mu);
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Single-particle lattice kinetic energy, sum_i (1 - cos p_i).
double dispersion(const Momentum& p);

/// Two-particle kinetic energy at pair momentum k and relative momentum p:
/// sum_i [2 - 2 cos(k_i/2) cos(p_i)].
double pair_energy(const Momentum& k, const Momentum& p);

/// Three-particle kinetic energy E(K;p,q) = eps(K-p-q) + eps(p) + eps(q).
double three_energy(const Momentum& K, const Momentum& p, const Momentum& q);

/// Band [min_p, max_p] of pair_energy(k, .).
Interval pair_band(const Momentum& k);

/// Lower band edge 2 sum_i (1 - cos(k_i/2)), evaluated without cancellation.
double pair_band_min(const Momentum& k);

/// pair_energy(k,p) - pair_band_min(k) = sum_i 4 cos(k_i/2) sin^2(p_i/2), never negative.
double pair_excess(const Momentum& k, const Momentum& p);

/// Lower edge of the free three-particle band, 3 eps(K/3).
double three_band_min(const Momentum& K);

/// Free three-particle band. lo is the closed form; hi is a grid maximum over
/// (p,q) polished by coordinate golden-section search and compared with the
/// symmetric-point candidates 3 eps((K + 2 pi m)/3).
Interval three_band(const Momentum& K, const TorusGrid& grid);

}  // namespace triboson
