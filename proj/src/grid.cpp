#include "triboson/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triboson/error.hpp"

namespace triboson {

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);  // (-2pi, 2pi)
  if (r > kPi) r -= kTwoPi;
  if (r <= -kPi) r += kTwoPi;
  return r;
}

Momentum::Momentum(int dim, std::span<const double> components) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidInput("Momentum: dimension must be 1 or 2");
  if (components.size() != static_cast<std::size_t>(dim))
    throw InvalidInput("Momentum: component count does not match dimension");
  for (int i = 0; i < dim; ++i) {
    const double v = components[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) throw InvalidInput("Momentum: non-finite component");
    c_[static_cast<std::size_t>(i)] = wrap_angle(v);
  }
}

Momentum::Momentum(std::initializer_list<double> components)
    : Momentum(static_cast<int>(components.size()),
               std::span<const double>(components.begin(), components.size())) {}

Momentum Momentum::uniform(int dim, double v) {
  std::array<double, kMaxDim> c{v, v};
  return Momentum(dim, std::span<const double>(c.data(), static_cast<std::size_t>(dim)));
}

Momentum Momentum::raw(int dim, std::span<const double> components) {
  Momentum m;
  if (dim < 1 || dim > kMaxDim || components.size() != static_cast<std::size_t>(dim))
    throw InvalidInput("Momentum: bad raw construction");
  m.dim_ = dim;
  for (int i = 0; i < dim; ++i) m.c_[static_cast<std::size_t>(i)] = components[static_cast<std::size_t>(i)];
  return m;
}

Momentum operator+(const Momentum& a, const Momentum& b) {
  std::array<double, Momentum::kMaxDim> c{};
  for (int i = 0; i < a.dim_; ++i) c[static_cast<std::size_t>(i)] = a[i] + b[i];
  return Momentum(a.dim_, std::span<const double>(c.data(), static_cast<std::size_t>(a.dim_)));
}

Momentum operator-(const Momentum& a, const Momentum& b) {
  std::array<double, Momentum::kMaxDim> c{};
  for (int i = 0; i < a.dim_; ++i) c[static_cast<std::size_t>(i)] = a[i] - b[i];
  return Momentum(a.dim_, std::span<const double>(c.data(), static_cast<std::size_t>(a.dim_)));
}

Momentum Momentum::operator-() const {
  std::array<double, kMaxDim> c{};
  for (int i = 0; i < dim_; ++i) c[static_cast<std::size_t>(i)] = -(*this)[i];
  return Momentum(dim_, std::span<const double>(c.data(), static_cast<std::size_t>(dim_)));
}

Momentum Momentum::scaled(double s) const {
  std::array<double, kMaxDim> c{};
  for (int i = 0; i < dim_; ++i) c[static_cast<std::size_t>(i)] = s * (*this)[i];
  return Momentum(dim_, std::span<const double>(c.data(), static_cast<std::size_t>(dim_)));
}

double Momentum::sup_norm() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs((*this)[i]));
  return m;
}

double Momentum::torus_distance(const Momentum& other) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double d = wrap_angle((*this)[i] - other[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

Momentum wrap(std::span<const double> p) { return Momentum(static_cast<int>(p.size()), p); }

TorusGrid::TorusGrid(int dim, int n) : dim_(dim), n_(n) {
  if (dim < 1 || dim > Momentum::kMaxDim) throw InvalidInput("TorusGrid: dimension must be 1 or 2");
  if (n < 8 || n % 2 != 0)
    throw InvalidInput("TorusGrid: points per axis must be even and >= 8, got " + std::to_string(n));
  size_ = static_cast<std::size_t>(n);
  if (dim == 2) size_ *= static_cast<std::size_t>(n);
  weight_ = 1.0 / static_cast<double>(size_);
}

double TorusGrid::axis_node(int j) const {
  int r = j % n_;
  if (r < 0) r += n_;
  // Indices above n/2 map to the negative half; n/2 itself is +pi.
  if (2 * r > n_) r -= n_;
  return kTwoPi * static_cast<double>(r) / static_cast<double>(n_);
}

std::array<int, Momentum::kMaxDim> TorusGrid::axis_indices(std::size_t flat) const {
  if (dim_ == 1) return {static_cast<int>(flat), 0};
  return {static_cast<int>(flat / static_cast<std::size_t>(n_)),
          static_cast<int>(flat % static_cast<std::size_t>(n_))};
}

std::size_t TorusGrid::flat_index(std::array<int, Momentum::kMaxDim> idx) const {
  auto m = [this](int j) {
    int r = j % n_;
    return static_cast<std::size_t>(r < 0 ? r + n_ : r);
  };
  if (dim_ == 1) return m(idx[0]);
  return m(idx[0]) * static_cast<std::size_t>(n_) + m(idx[1]);
}

Momentum TorusGrid::node(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  std::array<double, Momentum::kMaxDim> c{axis_node(idx[0]), axis_node(idx[1])};
  return Momentum::raw(dim_, std::span<const double>(c.data(), static_cast<std::size_t>(dim_)));
}

std::size_t TorusGrid::add(std::size_t a, std::size_t b) const {
  const auto ia = axis_indices(a), ib = axis_indices(b);
  return flat_index({ia[0] + ib[0], ia[1] + ib[1]});
}

std::size_t TorusGrid::sub(std::size_t a, std::size_t b) const {
  const auto ia = axis_indices(a), ib = axis_indices(b);
  return flat_index({ia[0] - ib[0], ia[1] - ib[1]});
}

std::size_t TorusGrid::neg(std::size_t a) const {
  const auto ia = axis_indices(a);
  return flat_index({-ia[0], -ia[1]});
}

bool TorusGrid::locate(const Momentum& p, std::size_t* index) const {
  if (p.dim() != dim_) return false;
  std::array<int, Momentum::kMaxDim> idx{0, 0};
  for (int i = 0; i < dim_; ++i) {
    const double x = p[i] * n_ / kTwoPi;
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-12 * n_) return false;
    idx[static_cast<std::size_t>(i)] = static_cast<int>(r);
  }
  if (index) *index = flat_index(idx);
  return true;
}

TorusGrid make_grid(int dim, int n) { return TorusGrid(dim, n); }

TorusGrid refine(const TorusGrid& grid) { return TorusGrid(grid.dim(), 2 * grid.n()); }

double integrate(const std::function<double(const Momentum&)>& g, const TorusGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = g(grid.node(i));
    if (!std::isfinite(v)) throw DomainError("integrate: non-finite integrand at node " + std::to_string(i));
    s += v;
  }
  return s / static_cast<double>(grid.size());
}

}  // namespace triboson
