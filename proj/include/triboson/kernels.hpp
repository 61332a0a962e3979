#pragma once

#include <cstddef>
#include <vector>

#include "triboson/grid.hpp"
#include "triboson/numerics.hpp"

namespace triboson {

/// Hot loops in two flavours: a plain serial reference and an OpenMP version.
/// Both evaluate every entry with the same expression in the same order, so
/// their outputs are bit-identical; tests rely on that.
enum class Exec { serial, parallel };

/// E(K; p_i, p_j) on grid x grid. For on-grid K the third momentum is looked up
/// in the group and the three dispersions are summed in sorted order, which
/// makes the value invariant under every permutation of the triple to the bit.
class ThreeEnergyTable {
 public:
  ThreeEnergyTable(const Momentum& K, const TorusGrid& grid);

  std::size_t size() const { return grid_.size(); }
  const TorusGrid& grid() const { return grid_; }
  const Momentum& K() const { return K_; }
  bool on_grid() const { return on_grid_; }
  /// Flat index of K (valid only when on_grid()).
  std::size_t k_index() const { return k_index_; }
  /// Flat index of K - p_i - p_j (valid only when on_grid()).
  std::size_t third(std::size_t i, std::size_t j) const {
    return grid_.sub(grid_.sub(k_index_, i), j);
  }
  double operator()(std::size_t i, std::size_t j) const;

 private:
  Momentum K_;
  TorusGrid grid_;
  bool on_grid_ = false;
  std::size_t k_index_ = 0;
  std::vector<double> eps_;
};

/// Discrete channel determinants 1 + mu * w * sum_j 1/(E_ij - z), one per node.
std::vector<double> channel_determinant_vector(const ThreeEnergyTable& e, double z, double mu,
                                               Exec exec);

/// Birman-Schwinger matrix -factor*mu*w * d_i d_j / (E_ij - z) with d = delta^{-1/2}.
/// The exchange factor is 2 for the correct operator; other values exist for mutation tests.
SymmetricMatrix bs_matrix(const ThreeEnergyTable& e, const std::vector<double>& delta, double z,
                          double mu, double factor, Exec exec);

/// S3 orbits of grid x grid pairs (requires on-grid K). Orbit members are flat
/// pair indices a = i * N + j; orbit_of maps a pair to its orbit.
struct OrbitBasis {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> orbit_of;

  std::size_t size() const { return members.size(); }
};

OrbitBasis s3_orbits(const ThreeEnergyTable& e);

/// Full discretized three-body Hamiltonian on grid x grid, order N^2.
SymmetricMatrix hamiltonian_full(const ThreeEnergyTable& e, double mu, Exec exec);

/// The same operator restricted to the S3-symmetric subspace in the orbit basis.
SymmetricMatrix hamiltonian_symmetric(const ThreeEnergyTable& e, const OrbitBasis& orbits, double mu,
                                      Exec exec);

/// Orbit-basis restriction of an arbitrary S3-invariant matrix of order N^2.
SymmetricMatrix restrict_to_orbits(const SymmetricMatrix& h, const OrbitBasis& orbits, Exec exec);

}  // namespace triboson
