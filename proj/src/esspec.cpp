#include "triboson/esspec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "triboson/error.hpp"
#include "triboson/twobody.hpp"

namespace triboson {

namespace {

constexpr double kRefineTol = 1e-8;
constexpr double kDegenerateTol = 1e-10;

Momentum with_component(const Momentum& base, int axis, double value) {
  std::array<double, Momentum::kMaxDim> c{base[0], base.dim() > 1 ? base[1] : 0.0};
  c[static_cast<std::size_t>(axis)] = value;
  return Momentum(base.dim(), std::span<const double>(c.data(), static_cast<std::size_t>(base.dim())));
}

/// Coordinate golden-section descent of f, starting at x, within +-h per axis
/// of the start point.
Momentum coordinate_min(const std::function<double(const Momentum&)>& f, Momentum x, double h,
                        double tol, double* value) {
  const Momentum start = x;
  double best = f(x);
  for (int cycle = 0; cycle < 20; ++cycle) {
    const double before = best;
    for (int axis = 0; axis < x.dim(); ++axis) {
      auto line = [&](double t) { return f(with_component(x, axis, t)); };
      double v = 0.0;
      const double t = golden_section_min(line, start[axis] - h, start[axis] + h, tol, &v);
      if (v < best) {
        best = v;
        x = with_component(x, axis, t);
      }
    }
    if (x.dim() == 1 || before - best < 1e-15) break;
  }
  *value = best;
  return x;
}

/// Flat indices of the grid neighbours of node i (axis and diagonal).
std::vector<std::size_t> neighbours(const TorusGrid& grid, std::size_t i) {
  std::vector<std::size_t> out;
  const auto idx = grid.axis_indices(i);
  if (grid.dim() == 1) {
    out.push_back(grid.flat_index({idx[0] - 1, 0}));
    out.push_back(grid.flat_index({idx[0] + 1, 0}));
    return out;
  }
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      if (a != 0 || b != 0) out.push_back(grid.flat_index({idx[0] + a, idx[1] + b}));
  return out;
}

struct Extremum {
  Momentum k;
  double value = 0.0;
  std::vector<Momentum> grid_candidates;
  bool degenerate = false;
};

/// Minimum of f over the torus: grid scan, then refinement of every grid-level
/// local minimum (up to 8 lowest).
Extremum torus_min(const std::function<double(const Momentum&)>& f, const TorusGrid& grid,
                   double tol) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid.node(i));

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool is_min = true;
    for (std::size_t j : neighbours(grid, i)) {
      // Ties go to the lower flat index so a flat pair yields one candidate.
      if (values[j] < values[i] || (values[j] == values[i] && j < i)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  if (minima.size() > 8) minima.resize(8);

  Extremum out;
  std::vector<std::pair<Momentum, double>> refined;
  for (std::size_t i : minima) {
    out.grid_candidates.push_back(grid.node(i));
    double v = 0.0;
    const Momentum k = coordinate_min(f, grid.node(i), grid.spacing(), tol, &v);
    refined.emplace_back(k, v);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < refined.size(); ++i)
    if (refined[i].second < refined[best].second) best = i;
  out.k = refined[best].first;
  out.value = refined[best].second;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (i == best) continue;
    if (std::abs(refined[i].second - out.value) <= kDegenerateTol &&
        refined[i].first.torus_distance(out.k) > 2.0 * grid.spacing())
      out.degenerate = true;
  }
  return out;
}

}  // namespace

IntervalUnion IntervalUnion::merge(std::vector<Interval> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalUnion u;
  for (const auto& p : pieces) {
    if (!u.parts.empty() && p.lo <= u.parts.back().hi)
      u.parts.back().hi = std::max(u.parts.back().hi, p.hi);
    else
      u.parts.push_back(p);
  }
  return u;
}

bool IntervalUnion::contains(double x) const {
  return std::any_of(parts.begin(), parts.end(), [x](const Interval& i) { return i.contains(x); });
}

double channel_value(const Momentum& K, const Momentum& k, const ModelParams& params,
                     const TorusGrid& grid, double tol) {
  return eigenvalue(k, params, grid, tol) + dispersion(K - k);
}

double channel_value_limit(const Momentum& K, const Momentum& k, const ModelParams& params,
                           double tol) {
  const double g = gap_root([&](double gap) { return pair_integral_limit_gap(k, gap); }, params.mu, tol);
  return pair_band_min(k) - g + dispersion(K - k);
}

ChannelBranch channel_branch(const Momentum& K, const ModelParams& params, const TorusGrid& k_grid,
                             double tol) {
  if (K.dim() != params.dim || k_grid.dim() != params.dim)
    throw InvalidInput("channel_branch: dimension mismatch");
  // The two-body solve starts from a small quadrature and doubles as needed.
  const TorusGrid seed(params.dim, 16);
  auto z = [&](const Momentum& k) { return channel_value(K, k, params, seed, tol); };

  const Extremum lo = torus_min(z, k_grid, kRefineTol);
  const Extremum hi = torus_min([&](const Momentum& k) { return -z(k); }, k_grid, kRefineTol);

  ChannelBranch b;
  b.range = {lo.value, -hi.value};
  b.k_min = lo.k;
  b.p_min = K - lo.k;
  b.k_max = hi.k;
  b.grid_minimizers = lo.grid_candidates;
  b.degenerate_minimum = lo.degenerate;
  return b;
}

EssentialSpectrum essential_spectrum(const Momentum& K, const ModelParams& params,
                                     const TorusGrid& grid, double tol) {
  const ChannelBranch branch = channel_branch(K, params, grid, tol);
  const int band_n = std::min(grid.n(), params.dim == 1 ? 64 : 16);

  EssentialSpectrum es;
  es.K = K;
  es.branch = branch.range;
  es.band = three_band(K, TorusGrid(params.dim, band_n));
  es.union_set = IntervalUnion::merge({es.branch, es.band});
  es.tau_ess = branch.range.lo;
  es.p_min = branch.p_min;
  es.degenerate_minimum = branch.degenerate_minimum;
  return es;
}

double channel_determinant(const Momentum& K, const Momentum& p, double z,
                           const ModelParams& params, const TorusGrid& grid) {
  double floor = INFINITY, s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) floor = std::min(floor, three_energy(K, p, grid.node(i)));
  if (!(z < floor))
    throw DomainError("channel_determinant: z = " + std::to_string(z) +
                      " is not below the discrete pair continuum at this spectator momentum");
  for (std::size_t i = 0; i < grid.size(); ++i) s += 1.0 / (three_energy(K, p, grid.node(i)) - z);
  return 1.0 + params.mu * s / static_cast<double>(grid.size());
}

double channel_determinant_limit(const Momentum& K, const Momentum& p, double z,
                                 const ModelParams& params) {
  const Momentum k = K - p;
  const double gap = pair_band_min(k) + dispersion(p) - z;
  if (!(gap > 0.0))
    throw DomainError("channel_determinant_limit: z = " + std::to_string(z) +
                      " is not below the pair continuum at this spectator momentum");
  return 1.0 + params.mu * pair_integral_limit_gap(k, gap);
}

double grid_channel_level(const Momentum& K, const Momentum& p, const ModelParams& params,
                          const TorusGrid& grid, double tol) {
  std::vector<double> e(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) e[i] = three_energy(K, p, grid.node(i));
  const double floor = *std::min_element(e.begin(), e.end());
  for (double& v : e) v -= floor;
  const double g = gap_root(
      [&](double gap) {
        double s = 0.0;
        for (double v : e) s += 1.0 / (v + gap);
        return s / static_cast<double>(e.size());
      },
      params.mu, tol);
  return floor - g;
}

double grid_channel_bottom(const Momentum& K, const ModelParams& params, const TorusGrid& grid) {
  double bottom = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double level = grid_channel_level(K, grid.node(i), params, grid);
    bottom = i == 0 ? level : std::min(bottom, level);
  }
  return bottom;
}

QuadraticCheck quadratic_vanishing_check(const Momentum& K, const ModelParams& params,
                                         const TorusGrid& grid, int axis) {
  if (axis < 0 || axis >= params.dim) throw InvalidInput("quadratic_vanishing_check: bad axis");
  auto z = [&](const Momentum& k) { return channel_value_limit(K, k, params); };
  const Extremum lo = torus_min(z, grid, 1e-10);

  QuadraticCheck out;
  out.tau_ess = lo.value;
  out.p_min = K - lo.k;
  out.in_neighborhood = K.sup_norm() <= 0.5 * kPi + 1e-12;

  std::vector<double> lx, ly;
  for (double r : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    const Momentum p = with_component(out.p_min, axis, out.p_min[axis] + r);
    const double v = channel_determinant_limit(K, p, out.tau_ess, params);
    if (!(v > 0.0))
      throw DomainError("quadratic_vanishing_check: determinant " + std::to_string(v) +
                        " is not positive at r = " + std::to_string(r));
    out.radii.push_back(r);
    out.values.push_back(v);
    lx.push_back(std::log(r));
    ly.push_back(std::log(v));
  }
  const LineFit fit = linear_fit(lx, ly);
  out.slope = fit.slope;
  out.r2 = fit.r2;
  return out;
}

}  // namespace triboson
