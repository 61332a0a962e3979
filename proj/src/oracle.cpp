#include "triboson/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triboson/error.hpp"

namespace triboson {

namespace {

constexpr std::size_t kMaxOrder = 8192;
constexpr double kSampleGap = 1e-6;

void require_on_grid(const ThreeEnergyTable& e, const char* who) {
  if (!e.on_grid()) throw InvalidInput(std::string(who) + ": K must be a grid node");
}

void require_desk_scale(const TorusGrid& grid, const char* who) {
  const std::size_t order = grid.size() * grid.size();
  if (order > kMaxOrder)
    throw ResourceError(std::string(who) + ": order " + std::to_string(order) + " exceeds the cap of 8192");
}

double discrete_norm(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s / static_cast<double>(f.size()));
}

}  // namespace

DiscretizedHamiltonian discretize_H(const Momentum& K, const ModelParams& params,
                                    const TorusGrid& grid, Exec exec) {
  const ThreeEnergyTable e(K, grid);
  require_on_grid(e, "discretize_H");
  require_desk_scale(grid, "discretize_H");
  DiscretizedHamiltonian h;
  h.K = K;
  h.dim = grid.dim();
  h.grid_n = grid.n();
  h.sector = Sector::full;
  h.matrix = hamiltonian_full(e, params.mu, exec);
  h.orbits = s3_orbits(e);
  return h;
}

DiscretizedHamiltonian symmetric_sector(const DiscretizedHamiltonian& h, Exec exec) {
  if (h.sector == Sector::symmetric) return h;
  DiscretizedHamiltonian s = h;
  s.sector = Sector::symmetric;
  s.matrix = restrict_to_orbits(h.matrix, h.orbits, exec);
  return s;
}

DiscretizedHamiltonian discretize_H_symmetric(const Momentum& K, const ModelParams& params,
                                              const TorusGrid& grid, Exec exec) {
  const ThreeEnergyTable e(K, grid);
  require_on_grid(e, "discretize_H_symmetric");
  require_desk_scale(grid, "discretize_H_symmetric");
  DiscretizedHamiltonian h;
  h.K = K;
  h.dim = grid.dim();
  h.grid_n = grid.n();
  h.sector = Sector::symmetric;
  h.orbits = s3_orbits(e);
  h.matrix = hamiltonian_symmetric(e, h.orbits, params.mu, exec);
  return h;
}

std::vector<double> apply_H(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                            const std::vector<double>& f) {
  const ThreeEnergyTable e(K, grid);
  require_on_grid(e, "apply_H");
  const std::size_t n = grid.size();
  if (f.size() != n * n) throw InvalidInput("apply_H: table size mismatch");

  std::vector<double> row(n, 0.0), col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row[i] += f[i * n + j];
      col[j] += f[i * n + j];
    }
  // sum_t f(t, s - t) depends only on s = p + q.
  std::vector<double> diag(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) diag[s] += f[t * n + grid.sub(s, t)];

  const double w = 1.0 / static_cast<double>(n);
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = e(i, j) * f[i * n + j] + params.mu * w * (row[i] + col[j] + diag[grid.add(i, j)]);
  return out;
}

std::vector<double> expand_symmetric(const OrbitBasis& orbits, const std::vector<double>& v) {
  if (v.size() != orbits.size()) throw InvalidInput("expand_symmetric: size mismatch");
  const std::size_t order = orbits.orbit_of.size();
  // Unit coefficient vector -> unit discrete norm (1/order) sum f^2 = 1.
  const double scale = std::sqrt(static_cast<double>(order));
  std::vector<double> f(order);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const double value = scale * v[o] / std::sqrt(static_cast<double>(orbits.members[o].size()));
    for (std::size_t a : orbits.members[o]) f[a] = value;
  }
  return f;
}

double relative_residual(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                         double energy, const std::vector<double>& f) {
  std::vector<double> r = apply_H(K, params, grid, f);
  for (std::size_t a = 0; a < r.size(); ++a) r[a] -= energy * f[a];
  return discrete_norm(r) / discrete_norm(f);
}

double s3_defect(const Momentum& K, const TorusGrid& grid, const std::vector<double>& f) {
  const ThreeEnergyTable e(K, grid);
  require_on_grid(e, "s3_defect");
  const std::size_t n = grid.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = f[i * n + j];
      d = std::max(d, std::abs(v - f[j * n + i]));
      d = std::max(d, std::abs(v - f[j * n + e.third(i, j)]));
    }
  return d;
}

BoundStateSet oracle_bound_states(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                                  const Thresholds* thresholds, Exec exec) {
  BoundStateSet set;
  set.K = K;
  if (params.mu == 0.0) {
    // No pair binding: the continuum starts at the free band.
    set.thresholds.e_min = three_band_min(K);
    set.thresholds.tau_ess = set.thresholds.tau_grid = set.thresholds.tau_op = set.thresholds.e_min;
    return set;
  }
  set.thresholds = thresholds ? *thresholds : compute_thresholds(K, params, grid);
  const DiscretizedHamiltonian h = discretize_H_symmetric(K, params, grid, exec);
  const EigenDecomposition eig = sym_eigen(h.matrix);
  for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
    const double e = eig.eigenvalues[j];
    if (!(e < set.thresholds.tau_op)) break;
    std::vector<double> f = expand_symmetric(h.orbits, eig.eigenvectors[j]);
    double total = 0.0;
    for (double v : f) total += v;
    if (total < 0.0)
      for (double& v : f) v = -v;
    set.energies.push_back(e);
    set.residuals.push_back(relative_residual(K, params, grid, e, f));
    set.degenerate.push_back(false);
    set.wavefunctions.push_back(std::move(f));
  }
  for (std::size_t j = 1; j < set.energies.size(); ++j) {
    if (set.energies[j] - set.energies[j - 1] < 1e-9) set.degenerate[j] = set.degenerate[j - 1] = true;
  }
  set.count = static_cast<int>(set.energies.size());
  return set;
}

CrosscheckReport crosscheck(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                            BSOptions opts) {
  CrosscheckReport rep;
  rep.K = K;
  rep.dim = grid.dim();
  rep.grid_n = grid.n();
  rep.mu = params.mu;
  rep.thresholds = compute_thresholds(K, params, grid);
  const Thresholds& th = rep.thresholds;

  const DiscretizedHamiltonian h = discretize_H_symmetric(K, params, grid, opts.exec);
  const std::vector<double> spectrum = sym_eigenvalues(h.matrix);
  const BirmanSchwinger bs(K, params, grid, th, opts);

  auto fail = [&](const std::string& why) {
    if (rep.failure.empty()) rep.failure = why;
  };

  // Sample energies from well below the lowest level up to the last ladder rung.
  const double delta0 = 0.1 * (th.e_min - th.tau_op);
  const double z_top = th.tau_op - delta0 * std::ldexp(1.0, -20);
  const double lowest = std::min(spectrum.front(), th.tau_op);
  const double z_low = lowest - delta0 - 0.05;
  for (int s = 0; s < 8; ++s) {
    double z = z_low + (z_top - z_low) * s / 7.0;
    for (int guard = 0; guard < 100; ++guard) {
      const bool close = std::any_of(spectrum.begin(), spectrum.end(),
                                     [&](double l) { return std::abs(l - z) < kSampleGap; });
      if (!close) break;
      z -= 2.0 * kSampleGap;
    }
    CrosscheckSample sample;
    sample.z = z;
    sample.oracle_count = static_cast<int>(std::count_if(spectrum.begin(), spectrum.end(), [&](double l) { return l < z; }));
    const CountResult c = bs.count_at(z);
    sample.bs_count = c.count;
    sample.tie = c.tie;
    rep.samples.push_back(sample);
  }
  rep.counts_match = std::all_of(rep.samples.begin(), rep.samples.end(),
                                 [](const CrosscheckSample& s) { return s.oracle_count == s.bs_count; });
  if (!rep.counts_match) fail("eigenvalue counts differ between oracle and Birman-Schwinger");

  for (double l : spectrum)
    if (l < z_top) rep.oracle_energies.push_back(l);

  try {
    const BoundStateSet set = bs.bound_states(1e-11, true);
    rep.bs_energies = set.energies;
    if (rep.bs_energies.size() != rep.oracle_energies.size()) {
      fail("number of bound states differs (oracle " + std::to_string(rep.oracle_energies.size()) +
           ", solver " + std::to_string(rep.bs_energies.size()) + ")");
    } else {
      for (std::size_t j = 0; j < rep.bs_energies.size(); ++j)
        rep.max_energy_delta = std::max(rep.max_energy_delta, std::abs(rep.bs_energies[j] - rep.oracle_energies[j]));
      rep.energies_match = rep.max_energy_delta <= 1e-7;
      if (!rep.energies_match) fail("bound-state energies differ by more than 1e-7");
    }
    for (std::size_t j = 0; j < set.wavefunctions.size(); ++j) {
      rep.max_residual = std::max(rep.max_residual,
                                  relative_residual(K, params, grid, set.energies[j], set.wavefunctions[j]));
      rep.max_s3_defect = std::max(rep.max_s3_defect, s3_defect(K, grid, set.wavefunctions[j]));
    }
    rep.eigenfunctions_ok = rep.max_residual <= 1e-7 && rep.max_s3_defect <= 1e-12;
    if (!rep.eigenfunctions_ok) fail("reconstructed eigenfunctions fail the residual or symmetry check");
  } catch (const Error& e) {
    fail(std::string("solver error: ") + e.what());
  }
  rep.passed = rep.failure.empty();
  return rep;
}

}  // namespace triboson
