#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "triboson/energy.hpp"
#include "triboson/grid.hpp"

namespace triboson {

/// Lattice-site amplitudes c(x) = w * sum_p e^{i p.x} f(p) on the box |x_k| <= R for
/// every coordinate. `coords` is d for a grid table and 2d for a grid x grid table.
struct CoefficientTable {
  int coords = 1;
  int cutoff = 0;
  std::vector<std::complex<double>> values;

  int side() const { return 2 * cutoff + 1; }
  /// Site offsets, each in [-R, R], coords of them.
  const std::complex<double>& at(const std::vector<int>& x) const;
  /// max_k |x_k| of the site stored at flat position `flat`.
  int shell_of(std::size_t flat) const;
};

struct DecayReport {
  double rate = 0.0;
  double r2 = 0.0;
  std::vector<int> radii;
  std::vector<double> peak_amplitudes;
  std::optional<double> theoretical_rate;
};

/// Discrete inverse Fourier transform of a grid table (size n^d) or grid x grid
/// table (size n^{2d}). Throws InvalidInput if R > n/2 (would alias).
CoefficientTable lattice_coefficients(const std::vector<double>& f, const TorusGrid& grid, int cutoff);

/// Fits log(max over the sup-norm shell r of |c|) against r on [r_min, r_max].
/// Throws DomainError when a shell maximum drops below 1e-14.
DecayReport decay_fit(const CoefficientTable& coefficients, int r_min, int r_max);

/// arccosh((2 - e(k)) / (2 cos(k/2))) with e from the closed form; d=1 only.
/// Throws DomainError for |k| >= pi - 1e-6.
double two_body_decay_rate_1d(const Momentum& k, const ModelParams& params);

}  // namespace triboson
