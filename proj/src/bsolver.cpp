#include "triboson/bsolver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "triboson/error.hpp"

namespace triboson {

namespace {

constexpr int kLadderRungs = 20;
constexpr double kTieTol = 1e-10;

/// Periodic interpolation kernel for n equispaced nodes, evaluated at offset x.
double dirichlet(int n, double x) {
  double s = 1.0 + std::cos(0.5 * n * x);
  for (int m = 1; m < n / 2; ++m) s += 2.0 * std::cos(m * x);
  return s / n;
}

double sorted_sum(double a, double b, double c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (a + b) + c;
}

}  // namespace

Thresholds compute_thresholds(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                              double tol) {
  Thresholds t;
  const ChannelBranch branch = channel_branch(K, params, grid, tol);
  t.tau_ess = branch.range.lo;
  t.p_min = branch.p_min;
  t.degenerate_minimum = branch.degenerate_minimum;
  t.tau_grid = grid_channel_bottom(K, params, grid);
  t.tau_op = std::min(t.tau_ess, t.tau_grid);
  t.e_min = three_band_min(K);
  return t;
}

double trig_interpolate(const std::vector<double>& values, const TorusGrid& grid, const Momentum& x) {
  if (values.size() != grid.size()) throw InvalidInput("trig_interpolate: size mismatch");
  const int n = grid.n();
  std::vector<double> w0(static_cast<std::size_t>(n)), w1(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < n; ++j) w0[static_cast<std::size_t>(j)] = dirichlet(n, x[0] - grid.axis_node(j));
  if (grid.dim() == 1) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += w0[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(j)];
    return s;
  }
  for (int j = 0; j < n; ++j) w1[static_cast<std::size_t>(j)] = dirichlet(n, x[1] - grid.axis_node(j));
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.axis_indices(i);
    s += w0[static_cast<std::size_t>(idx[0])] * w1[static_cast<std::size_t>(idx[1])] * values[i];
  }
  return s;
}

BirmanSchwinger::BirmanSchwinger(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                                 BSOptions opts)
    : BirmanSchwinger(K, params, grid, compute_thresholds(K, params, grid), opts) {}

BirmanSchwinger::BirmanSchwinger(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                                 const Thresholds& thresholds, BSOptions opts)
    : K_(K), params_(params), grid_(grid), opts_(opts), table_(K, grid), thresholds_(thresholds) {
  if (K.dim() != params.dim || grid.dim() != params.dim)
    throw InvalidInput("BirmanSchwinger: dimension mismatch");
}

BSMatrix BirmanSchwinger::assemble(double z) const {
  if (!(z < thresholds_.tau_op - 1e-12))
    throw DomainError("assemble: z = " + std::to_string(z) + " is not below the essential spectrum");
  BSMatrix m;
  m.K = K_;
  m.z = z;
  m.grid_n = grid_.n();
  m.delta = channel_determinant_vector(table_, z, params_.mu, opts_.exec);
  for (std::size_t i = 0; i < m.delta.size(); ++i) {
    if (!(m.delta[i] > 0.0)) {
      const Momentum p = grid_.node(i);
      std::string where = std::to_string(p[0]);
      if (p.dim() == 2) where += ", " + std::to_string(p[1]);
      throw DomainError("assemble: channel determinant " + std::to_string(m.delta[i]) +
                        " is not positive at node " + std::to_string(i) + " (p = " + where + ")");
    }
  }
  m.matrix = bs_matrix(table_, m.delta, z, params_.mu, opts_.exchange_factor, opts_.exec);
  return m;
}

CountResult BirmanSchwinger::count_at(double z) const {
  const BSMatrix m = assemble(z);
  const auto lambda = sym_eigenvalues(m.matrix);
  CountResult r;
  r.closest_gap = INFINITY;
  for (double l : lambda) {
    if (l > 1.0) ++r.count;
    r.closest_gap = std::min(r.closest_gap, std::abs(l - 1.0));
  }
  r.tie = r.closest_gap <= kTieTol;
  return r;
}

CountTotal BirmanSchwinger::count_total() const {
  CountTotal out;
  LadderReport& rep = out.report;
  rep.tau_op = thresholds_.tau_op;
  rep.e_min = thresholds_.e_min;
  rep.delta0 = 0.1 * (thresholds_.e_min - thresholds_.tau_op);
  for (int j = 0; j <= kLadderRungs; ++j) {
    const double z = rep.tau_op - rep.delta0 * std::ldexp(1.0, -j);
    const CountResult c = count_at(z);
    rep.z.push_back(z);
    rep.counts.push_back(c.count);
    rep.ties.push_back(c.tie);
  }
  const auto& c = rep.counts;
  const std::size_t last = c.size() - 1;
  rep.converged = c[last] == c[last - 1] && c[last] == c[last - 2];
  rep.stable_from = static_cast<int>(last);
  while (rep.stable_from > 0 && c[static_cast<std::size_t>(rep.stable_from - 1)] == c[last]) --rep.stable_from;
  rep.resolution_floor = rep.delta0 * std::ldexp(1.0, -kLadderRungs);
  out.count = c[last];
  return out;
}

double BirmanSchwinger::fredholm_det(double z) const {
  const auto lambda = sym_eigenvalues(assemble(z).matrix);
  double d = 1.0;
  for (double l : lambda) d *= 1.0 - l;
  return d;
}

BoundStateSet BirmanSchwinger::bound_states(double tol, bool with_wavefunctions) const {
  BoundStateSet set;
  set.K = K_;
  set.thresholds = thresholds_;
  const CountTotal total = count_total();
  set.report = total.report;
  if (!total.report.converged)
    throw NonConvergence("bound_states: eigenvalue count did not settle on the threshold ladder");
  const int n_states = total.count;
  if (n_states == 0) return set;

  // Every eigenvalue lies above E_min - 3|mu| because ||mu (V1+V2+V3)|| <= 3|mu|.
  std::map<double, int> known;
  const double z_top = total.report.z.back();
  known[z_top] = n_states;
  double z_bottom = thresholds_.e_min - 3.0 * std::abs(params_.mu);
  for (int guard = 0; guard < 8; ++guard) {
    const int c = count_at(z_bottom).count;
    known[z_bottom] = c;
    if (c == 0) break;
    z_bottom -= 3.0 * std::abs(params_.mu) + 1.0;
  }
  if (known[z_bottom] != 0) throw NonConvergence("bound_states: no state-free lower bracket");

  auto count = [&](double z) {
    auto it = known.find(z);
    if (it != known.end()) return it->second;
    const int c = count_at(z).count;
    known[z] = c;
    return c;
  };

  int m = 1;
  while (m <= n_states) {
    // Tightest known bracket with count(a) < m <= count(b).
    double a = z_bottom, b = z_top;
    for (const auto& [z, c] : known) {
      if (c < m) a = std::max(a, z);
      if (c >= m) b = std::min(b, z);
    }
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count(mid) < m) a = mid;
      else b = mid;
    }
    const double energy = 0.5 * (a + b);
    const int jump = count(b) - count(a);
    const int upto = std::min(n_states, count(b));
    for (int s = m; s <= upto; ++s) {
      set.energies.push_back(energy);
      set.degenerate.push_back(jump > 1);
    }
    m = upto + 1;
  }

  for (double e : set.energies) {
    const auto lambda = sym_eigenvalues(assemble(e).matrix);
    double closest = INFINITY, d = 1.0;
    for (double l : lambda) {
      closest = std::min(closest, std::abs(1.0 - l));
      d *= 1.0 - l;
    }
    set.residuals.push_back(closest);
    set.fredholm.push_back(d);
    if (with_wavefunctions) set.wavefunctions.push_back(reconstruct(e));
  }
  set.count = static_cast<int>(set.energies.size());
  return set;
}

std::vector<double> BirmanSchwinger::reconstruct(double energy) const {
  const BSMatrix m = assemble(energy);
  const EigenDecomposition eig = sym_eigen(m.matrix);
  std::size_t best = 0;
  for (std::size_t j = 1; j < eig.eigenvalues.size(); ++j)
    if (std::abs(eig.eigenvalues[j] - 1.0) < std::abs(eig.eigenvalues[best] - 1.0)) best = j;
  if (std::abs(eig.eigenvalues[best] - 1.0) > 1e-4)
    throw DomainError("reconstruct: no eigenvalue of L(E) near 1 (nearest " +
                      std::to_string(eig.eigenvalues[best]) + "); energy is stale");

  const std::size_t n = grid_.size();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = eig.eigenvectors[best][i] / std::sqrt(m.delta[i]);

  std::vector<double> f(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double third = table_.on_grid()
                               ? phi[table_.third(i, j)]
                               : trig_interpolate(phi, grid_, K_ - (grid_.node(i) + grid_.node(j)));
      f[i * n + j] = -params_.mu * sorted_sum(phi[i], phi[j], third) / (table_(i, j) - energy);
    }
  }
  double norm2 = 0.0, total = 0.0;
  for (double v : f) {
    norm2 += v * v;
    total += v;
  }
  const double scale = (total < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2 / static_cast<double>(n * n));
  for (double& v : f) v *= scale;
  return f;
}

BSMatrix assemble(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                  BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).assemble(z);
}

CountResult count_at(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                     BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).count_at(z);
}

CountTotal count_total(const Momentum& K, const ModelParams& params, const TorusGrid& grid,
                       BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).count_total();
}

BoundStateSet bound_state_energies(const Momentum& K, const ModelParams& params,
                                   const TorusGrid& grid, double tol, BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).bound_states(tol);
}

double fredholm_det(const Momentum& K, double z, const ModelParams& params, const TorusGrid& grid,
                    BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).fredholm_det(z);
}

std::vector<double> reconstruct_eigenfunction(const Momentum& K, double energy,
                                              const ModelParams& params, const TorusGrid& grid,
                                              BSOptions opts) {
  return BirmanSchwinger(K, params, grid, opts).reconstruct(energy);
}

}  // namespace triboson
