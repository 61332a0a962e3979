#include "triboson/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "triboson/error.hpp"

namespace triboson {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> as_eigen(const SymmetricMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  return Eigen::Map<const RowMajor>(a.data().data(), n, n);
}

void require_finite(const SymmetricMatrix& a) {
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw InvalidInput("sym_eigen: matrix has non-finite entries");
  }
}

}  // namespace

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i + 1; j < order_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

std::vector<double> SymmetricMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    const double* row = data_.data() + i * order_;
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

EigenDecomposition sym_eigen(const SymmetricMatrix& a) {
  require_finite(a);
  EigenDecomposition out;
  if (a.order() == 0) return out;
  Eigen::MatrixXd m = as_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NonConvergence("sym_eigen: eigensolver failed");
  const auto n = a.order();
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  out.eigenvectors.resize(n);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvectors[j].assign(v.col(static_cast<Eigen::Index>(j)).data(),
                               v.col(static_cast<Eigen::Index>(j)).data() + n);
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymmetricMatrix& a) {
  require_finite(a);
  if (a.order() == 0) return {};
  Eigen::MatrixXd m = as_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NonConvergence("sym_eigen: eigensolver failed");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + a.order()};
}

double find_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                          const RootOptions& opts) {
  if (!(lo < hi)) std::swap(lo, hi);
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0) == (fb > 0)) {
    throw BracketError("find_root_monotone: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  // Illinois-style false position; a bisection step is forced whenever the
  // bracket fails to halve, so convergence is never worse than bisection.
  int side = 0;
  double last_width = b - a;
  for (int it = 0; it < opts.max_iter && (b - a) > opts.tol; ++it) {
    double x = 0.5 * (a + b);
    const bool halved = (b - a) <= 0.5 * last_width;
    if (opts.secant && (it % 2 == 0 || halved)) {
      const double s = b - fb * (b - a) / (fb - fa);
      if (s > a && s < b && std::isfinite(s)) x = s;
    }
    if (it % 2 == 1) last_width = b - a;
    // Bracket is down to adjacent doubles.
    if (!(x > a && x < b)) return std::abs(fa) < std::abs(fb) ? a : b;

    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  if ((b - a) > opts.tol) throw NonConvergence("find_root_monotone: iteration cap reached");
  return std::abs(fa) < std::abs(fb) ? a : b;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol,
                          double* fmin) {
  if (a > b) std::swap(a, b);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const bool left = fc < fd;
  if (fmin) *fmin = left ? fc : fd;
  return left ? c : d;
}

LineFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInput("linear_fit: size mismatch");
  if (xs.size() < 3) throw InvalidInput("linear_fit: need at least 3 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InvalidInput("linear_fit: degenerate abscissae");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r2 = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += r * r;
    }
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace triboson
