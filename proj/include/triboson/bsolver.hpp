#pragma once

#include <optional>
#include <vector>

#include "triboson/energy.hpp"
#include "triboson/esspec.hpp"
#include "triboson/grid.hpp"
#include "triboson/kernels.hpp"
#include "triboson/numerics.hpp"

namespace triboson {

/// Spectral edges used to place the energy window on a given grid.
struct Thresholds {
  /// Bottom of the continuum channel branch.
  double tau_ess = 0.0;
  /// Bottom of the discrete channel on this grid; the grid determinant is
  /// positive at every node only below it.
  double tau_grid = 0.0;
  /// min(tau_ess, tau_grid): the threshold the solver works below.
  double tau_op = 0.0;
  /// 3 eps(K/3).
  double e_min = 0.0;
  Momentum p_min;
  bool degenerate_minimum = false;
};

Thresholds compute_thresholds(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                              double tol = 1e-9);

struct BSOptions {
  /// 2 is the correct exchange factor; anything else is a deliberate mutation.
  double exchange_factor = 2.0;
  Exec exec = Exec::parallel;
};

struct BSMatrix {
  Momentum K;
  double z = 0.0;
  int grid_n = 0;
  SymmetricMatrix matrix;
  /// Discrete channel determinant at every node.
  std::vector<double> delta;
};

struct CountResult {
  int count = 0;
  /// Some eigenvalue within 1e-10 of 1; the count is reported but fragile.
  bool tie = false;
  double closest_gap = 0.0;
};

struct LadderReport {
  double tau_op = 0.0;
  double e_min = 0.0;
  double delta0 = 0.0;
  std::vector<double> z;
  std::vector<int> counts;
  std::vector<bool> ties;
  /// Last three rungs agree.
  bool converged = false;
  /// Earliest rung from which every later count equals the final one.
  int stable_from = -1;
  /// Distance of the last rung below tau_op; shallower states are not resolved.
  double resolution_floor = 0.0;
};

struct CountTotal {
  int count = 0;
  LadderReport report;
};

struct BoundStateSet {
  Momentum K;
  /// Ascending, all below the operating threshold.
  std::vector<double> energies;
  int count = 0;
  /// min_j |1 - lambda_j(L(E))| for the solver, ||(H-E)v|| for the oracle.
  std::vector<double> residuals;
  std::vector<double> fredholm;
  std::vector<bool> degenerate;
  /// grid x grid tables (flat index i*N + j), unit discrete norm, S3-symmetric.
  std::vector<std::vector<double>> wavefunctions;
  Thresholds thresholds;
  LadderReport report;
};

/// Birman-Schwinger machinery for one (K, mu, grid). Caches the three-body
/// energy table and the thresholds.
class BirmanSchwinger {
 public:
  BirmanSchwinger(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                  BSOptions opts = {});
  BirmanSchwinger(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                  const Thresholds& thresholds, BSOptions opts = {});

  const Thresholds& thresholds() const { return thresholds_; }
  const ThreeEnergyTable& table() const { return table_; }

  /// Throws DomainError unless z < tau_op - 1e-12, and names the node if a
  /// channel determinant is not positive.
  BSMatrix assemble(double z) const;
  CountResult count_at(double z) const;
  /// Rungs z_j = tau_op - delta0 * 2^-j, j = 0..20, delta0 = 0.1 (E_min - tau_op).
  CountTotal count_total() const;
  /// Integer bisection on the count for each state below the last rung.
  /// Throws NonConvergence if the ladder did not settle.
  BoundStateSet bound_states(double tol = 1e-11, bool with_wavefunctions = false) const;
  double fredholm_det(double z) const;
  /// f(p,q) = -mu (phi(p) + phi(q) + phi(K-p-q)) / (E(K;p,q) - E), phi = delta^{-1/2} psi,
  /// with psi the eigenvector of L(E) whose eigenvalue is nearest 1.
  std::vector<double> reconstruct(double energy) const;

 private:
  Momentum K_;
  ModelParams params_;
  TorusGrid grid_;
  BSOptions opts_;
  ThreeEnergyTable table_;
  Thresholds thresholds_;
};

BSMatrix assemble(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                  BSOptions opts = {});
CountResult count_at(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                     BSOptions opts = {});
CountTotal count_total(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                       BSOptions opts = {});
BoundStateSet bound_state_energies(const Momentum& K, const ModelParams& params,
                                   const TorusGrid& grid, double tol = 1e-11, BSOptions opts = {});
double fredholm_det(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                    BSOptions opts = {});
std::vector<double> reconstruct_eigenfunction(const Momentum& K, double energy,
                                              const ModelParams& params, const TorusGrid& grid,
                                              BSOptions opts = {});

/// Trigonometric interpolant through grid values, evaluated at an arbitrary momentum.
double trig_interpolate(const std::vector<double>& values, const TorusGrid& grid, const Momentum& x);

}  // namespace triboson
