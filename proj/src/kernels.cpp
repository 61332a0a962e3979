#include "triboson/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "triboson/energy.hpp"
#include "triboson/error.hpp"

namespace triboson {

namespace {

double sorted_sum(double a, double b, double c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (a + b) + c;
}

void delta_entry(const ThreeEnergyTable& e, double z, double mu, std::size_t i, double* out) {
  const std::size_t n = e.size();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += 1.0 / (e(i, j) - z);
  *out = 1.0 + mu * s / static_cast<double>(n);
}

void bs_row(const ThreeEnergyTable& e, const std::vector<double>& d, double z, double scale,
            std::size_t i, SymmetricMatrix& m) {
  for (std::size_t j = i; j < e.size(); ++j) m.set(i, j, scale * d[i] * d[j] / (e(i, j) - z));
}

/// Row a = (i, j) of the full Hamiltonian, written into row a only.
void hamiltonian_row(const ThreeEnergyTable& e, double mu, std::size_t a, SymmetricMatrix& h) {
  const TorusGrid& g = e.grid();
  const std::size_t n = e.size();
  const std::size_t i = a / n, j = a % n;
  const double v = mu / static_cast<double>(n);
  const std::size_t sum = g.add(i, j);
  h(a, a) += e(i, j);
  for (std::size_t t = 0; t < n; ++t) {
    h(a, i * n + t) += v;
    h(a, t * n + j) += v;
    h(a, t * n + g.sub(sum, t)) += v;
  }
}

/// Orbit row O of the symmetric-sector matrix; only entries (O, P >= O) are set.
/// `acc` and `seen` are scratch buffers sized to the orbit count.
template <class RowSum>
void orbit_row(const OrbitBasis& orbits, std::size_t o, std::vector<double>& acc,
               std::vector<char>& seen, std::vector<std::size_t>& touched, const RowSum& row_sum,
               SymmetricMatrix& out) {
  touched.clear();
  auto add = [&](std::size_t b, double value) {
    const std::size_t p = orbits.orbit_of[b];
    if (!seen[p]) {
      seen[p] = 1;
      touched.push_back(p);
    }
    acc[p] += value;
  };
  row_sum(orbits.members[o].front(), add);
  const double so = static_cast<double>(orbits.members[o].size());
  for (std::size_t p : touched) {
    if (p >= o) {
      const double sp = static_cast<double>(orbits.members[p].size());
      out.set(o, p, std::sqrt(so / sp) * acc[p]);
    }
    acc[p] = 0.0;
    seen[p] = 0;
  }
}

template <class RowSum>
SymmetricMatrix orbit_matrix(const OrbitBasis& orbits, const RowSum& row_sum, Exec exec) {
  const std::size_t m = orbits.size();
  SymmetricMatrix h(m);
  if (exec == Exec::serial) {
    std::vector<double> acc(m, 0.0);
    std::vector<char> seen(m, 0);
    std::vector<std::size_t> touched;
    for (std::size_t o = 0; o < m; ++o) orbit_row(orbits, o, acc, seen, touched, row_sum, h);
  } else {
#pragma omp parallel
    {
      std::vector<double> acc(m, 0.0);
      std::vector<char> seen(m, 0);
      std::vector<std::size_t> touched;
#pragma omp for schedule(dynamic, 16)
      for (std::size_t o = 0; o < m; ++o) orbit_row(orbits, o, acc, seen, touched, row_sum, h);
    }
  }
  return h;
}

}  // namespace

ThreeEnergyTable::ThreeEnergyTable(const Momentum& K, const TorusGrid& grid) : K_(K), grid_(grid) {
  if (K.dim() != grid.dim()) throw InvalidInput("ThreeEnergyTable: dimension mismatch");
  on_grid_ = grid.locate(K, &k_index_);
  eps_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) eps_[i] = dispersion(grid.node(i));
}

double ThreeEnergyTable::operator()(std::size_t i, std::size_t j) const {
  if (on_grid_) return sorted_sum(eps_[i], eps_[j], eps_[third(i, j)]);
  const double third_eps = dispersion(K_ - (grid_.node(i) + grid_.node(j)));
  return (std::min(eps_[i], eps_[j]) + std::max(eps_[i], eps_[j])) + third_eps;
}

std::vector<double> channel_determinant_vector(const ThreeEnergyTable& e, double z, double mu,
                                               Exec exec) {
  const std::size_t n = e.size();
  std::vector<double> delta(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) delta_entry(e, z, mu, i, &delta[i]);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) delta_entry(e, z, mu, i, &delta[i]);
  }
  return delta;
}

SymmetricMatrix bs_matrix(const ThreeEnergyTable& e, const std::vector<double>& delta, double z,
                          double mu, double factor, Exec exec) {
  const std::size_t n = e.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(delta[i]);
  const double scale = -factor * mu / static_cast<double>(n);
  SymmetricMatrix m(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) bs_row(e, d, z, scale, i, m);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < n; ++i) bs_row(e, d, z, scale, i, m);
  }
  return m;
}

OrbitBasis s3_orbits(const ThreeEnergyTable& e) {
  if (!e.on_grid()) throw InvalidInput("s3_orbits: K must be a grid node");
  const std::size_t n = e.size();
  OrbitBasis basis;
  basis.orbit_of.assign(n * n, 0);
  std::map<std::array<std::size_t, 3>, std::size_t> ids;
  for (std::size_t a = 0; a < n * n; ++a) {
    const std::size_t i = a / n, j = a % n;
    std::array<std::size_t, 3> key{i, j, e.third(i, j)};
    std::sort(key.begin(), key.end());
    auto [it, inserted] = ids.emplace(key, basis.members.size());
    if (inserted) basis.members.emplace_back();
    basis.members[it->second].push_back(a);
    basis.orbit_of[a] = it->second;
  }
  return basis;
}

SymmetricMatrix hamiltonian_full(const ThreeEnergyTable& e, double mu, Exec exec) {
  if (!e.on_grid()) throw InvalidInput("hamiltonian_full: K must be a grid node");
  const std::size_t order = e.size() * e.size();
  SymmetricMatrix h(order);
  if (exec == Exec::serial) {
    for (std::size_t a = 0; a < order; ++a) hamiltonian_row(e, mu, a, h);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t a = 0; a < order; ++a) hamiltonian_row(e, mu, a, h);
  }
  return h;
}

SymmetricMatrix hamiltonian_symmetric(const ThreeEnergyTable& e, const OrbitBasis& orbits, double mu,
                                      Exec exec) {
  const std::size_t n = e.size();
  const TorusGrid& g = e.grid();
  const double v = mu / static_cast<double>(n);
  auto row_sum = [&](std::size_t a, auto&& add) {
    const std::size_t i = a / n, j = a % n;
    const std::size_t sum = g.add(i, j);
    add(a, e(i, j));
    for (std::size_t t = 0; t < n; ++t) add(i * n + t, v);
    for (std::size_t t = 0; t < n; ++t) add(t * n + j, v);
    for (std::size_t t = 0; t < n; ++t) add(t * n + g.sub(sum, t), v);
  };

  return orbit_matrix(orbits, row_sum, exec);
}

SymmetricMatrix restrict_to_orbits(const SymmetricMatrix& full, const OrbitBasis& orbits, Exec exec) {
  if (full.order() != orbits.orbit_of.size()) throw InvalidInput("restrict_to_orbits: order mismatch");
  auto row_sum = [&](std::size_t a, auto&& add) {
    for (std::size_t b = 0; b < full.order(); ++b)
      if (full(a, b) != 0.0) add(b, full(a, b));
  };
  return orbit_matrix(orbits, row_sum, exec);
}

}  // namespace triboson
