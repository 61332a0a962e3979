#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace triboson {

/// Dense real symmetric matrix, row-major. Callers that fill it are expected to
/// write both triangles from a single evaluation so that symmetry is exact.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order) : order_(order), data_(order * order, 0.0) {}

  std::size_t order() const { return order_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * order_ + j]; }

  /// Sets entry (i,j) and its mirror.
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * order_ + j] = v;
    data_[j * order_ + i] = v;
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  double max_abs() const;
  double trace() const;
  /// max |A_ij - A_ji|; zero for anything assembled through set().
  double asymmetry() const;

  /// y = A x
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  /// Column j (stored contiguously as eigenvectors[j]) pairs with eigenvalues[j].
  std::vector<std::vector<double>> eigenvectors;
};

/// Full spectrum with orthonormal eigenvectors. Throws InvalidInput on non-finite entries.
EigenDecomposition sym_eigen(const SymmetricMatrix& a);

/// Spectrum only, ascending. Same contract as sym_eigen minus the vectors.
std::vector<double> sym_eigenvalues(const SymmetricMatrix& a);

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 400;
  /// Secant steps are taken when they land inside the bracket; false forces pure bisection.
  bool secant = true;
};

/// Root of a strictly monotone f on [lo, hi]. Bracket width on return is <= tol.
/// Throws BracketError when f(lo) and f(hi) share a sign.
double find_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                          const RootOptions& opts = {});

inline double find_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                                 double tol) {
  return find_root_monotone(f, lo, hi, RootOptions{.tol = tol});
}

/// Golden-section search for the minimum of a unimodal f on [a, b], stopped when
/// the bracket is narrower than tol. Writes the minimum value to *fmin if given.
double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol,
                          double* fmin = nullptr);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares. Needs >= 3 points and non-degenerate abscissae.
LineFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace triboson
