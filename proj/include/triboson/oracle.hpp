#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triboson/bsolver.hpp"
#include "triboson/kernels.hpp"

namespace triboson {

enum class Sector { full, symmetric };

/// Dense discretized H(K) on grid x grid, or its restriction to S3-symmetric functions.
struct DiscretizedHamiltonian {
  Momentum K;
  int dim = 1;
  int grid_n = 0;
  Sector sector = Sector::full;
  SymmetricMatrix matrix;
  /// Orbit basis of the symmetric sector (always filled; used to expand sector vectors).
  OrbitBasis orbits;
};

/// Full matrix of order n^{2d}. K must be a grid node; order capped at 8192.
DiscretizedHamiltonian discretize_H(const Momentum& K, const ModelParams& params,
                                    const TorusGrid& grid, Exec exec = Exec::parallel);

/// Restriction of a full H to the orbit basis of the S3 action on (p, q, K-p-q).
DiscretizedHamiltonian symmetric_sector(const DiscretizedHamiltonian& h, Exec exec = Exec::parallel);

/// Symmetric sector assembled directly, without forming the full matrix. Same
/// on-grid requirement and n^{2d} <= 8192 cap as the full build.
DiscretizedHamiltonian discretize_H_symmetric(const Momentum& K, const ModelParams& params,
                                              const TorusGrid& grid, Exec exec = Exec::parallel);

/// (H f)(p,q) = E f + mu w [sum_t f(p,t) + sum_t f(t,q) + sum_t f(t, p+q-t)] on a
/// grid x grid table. Needs on-grid K.
std::vector<double> apply_H(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                            const std::vector<double>& f);

/// Sector coefficients to a grid x grid table with unit discrete norm when v is unit.
std::vector<double> expand_symmetric(const OrbitBasis& orbits, const std::vector<double>& v);

/// ||(H - E) f|| / ||f||, discrete norms.
double relative_residual(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                         double energy, const std::vector<double>& f);

/// max over pairs of |f(p,q) - f(q,p)| and |f(p,q) - f(q,K-p-q)|.
double s3_defect(const Momentum& K, const TorusGrid& grid, const std::vector<double>& f);

/// Symmetric-sector eigenvalues strictly below the operating threshold, with
/// grid x grid eigenvectors. mu = 0 gives the empty set.
BoundStateSet oracle_bound_states(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                                  const Thresholds* thresholds = nullptr, Exec exec = Exec::parallel);

struct CrosscheckSample {
  double z = 0.0;
  int oracle_count = 0;
  int bs_count = 0;
  bool tie = false;
};

struct CrosscheckReport {
  Momentum K;
  int dim = 1;
  int grid_n = 0;
  double mu = 0.0;
  Thresholds thresholds;
  std::vector<CrosscheckSample> samples;
  std::vector<double> oracle_energies;
  std::vector<double> bs_energies;
  double max_energy_delta = 0.0;
  double max_residual = 0.0;
  double max_s3_defect = 0.0;
  bool counts_match = false;
  bool energies_match = false;
  bool eigenfunctions_ok = false;
  bool passed = false;
  std::string failure;
};

/// Oracle vs Birman-Schwinger at 8 energies below threshold (each kept >= 1e-6
/// from every oracle eigenvalue), plus energy-by-energy and eigenfunction checks.
CrosscheckReport crosscheck(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                            BSOptions opts = {});

}  // namespace triboson
