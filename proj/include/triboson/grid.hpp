#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <span>

namespace triboson {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into (-pi, pi].
double wrap_angle(double x);

/// Quasi-momentum on the torus, d in {1, 2}. Components are kept canonical, in (-pi, pi].
class Momentum {
 public:
  static constexpr int kMaxDim = 2;

  Momentum() = default;
  /// Wraps every component.
  Momentum(int dim, std::span<const double> components);
  Momentum(std::initializer_list<double> components);

  /// All components equal to v (wrapped).
  static Momentum uniform(int dim, double v);
  static Momentum zero(int dim) { return uniform(dim, 0.0); }
  /// Builds a momentum without reducing the components; used where the
  /// representative matters (halving, interpolation).
  static Momentum raw(int dim, std::span<const double> components);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> components() const {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  /// Componentwise arithmetic, result wrapped.
  friend Momentum operator+(const Momentum& a, const Momentum& b);
  friend Momentum operator-(const Momentum& a, const Momentum& b);
  Momentum operator-() const;
  /// Scales the representative in (-pi, pi] and wraps the result.
  Momentum scaled(double s) const;

  /// max_i |p_i| on the representative.
  double sup_norm() const;
  /// Euclidean distance on the torus (shortest representative per axis).
  double torus_distance(const Momentum& other) const;

  friend bool operator==(const Momentum& a, const Momentum& b) = default;

 private:
  int dim_ = 1;
  std::array<double, kMaxDim> c_{0.0, 0.0};
};

/// Componentwise reduction mod 2pi into (-pi, pi].
Momentum wrap(std::span<const double> p);

/// Uniform grid on T^d with nodes 2*pi*j/n (wrapped) per axis and Haar weight 1/n^d.
/// The node set is a subgroup of the torus: sums and negatives of nodes are nodes.
class TorusGrid {
 public:
  TorusGrid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }
  double weight() const { return weight_; }
  /// Grid spacing along each axis.
  double spacing() const { return kTwoPi / n_; }

  /// Axis coordinate of index j (j taken mod n), wrapped into (-pi, pi].
  double axis_node(int j) const;
  Momentum node(std::size_t flat) const;

  /// Per-axis indices of a flat index; unused trailing entries are zero.
  std::array<int, Momentum::kMaxDim> axis_indices(std::size_t flat) const;
  std::size_t flat_index(std::array<int, Momentum::kMaxDim> idx) const;

  /// Flat index of (a + b), (a - b), (-a) on the grid group.
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;

  /// True (and the flat index written to *index) when p coincides with a node within 1e-12.
  bool locate(const Momentum& p, std::size_t* index = nullptr) const;

 private:
  int dim_;
  int n_;
  std::size_t size_;
  double weight_;
};

TorusGrid make_grid(int dim, int n);

/// Same dimension, twice the points per axis. Old nodes are a subset of the new ones.
TorusGrid refine(const TorusGrid& grid);

/// Haar-weighted sum of g over the nodes. Throws DomainError naming the first
/// node where g is not finite.
double integrate(const std::function<double(const Momentum&)>& g, const TorusGrid& grid);

}  // namespace triboson
