#include "triboson/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triboson/error.hpp"
#include "triboson/numerics.hpp"
#include "triboson/twobody.hpp"

namespace triboson {

namespace {

using cplx = std::complex<double>;

/// Contracts axis `axis` of a row-major tensor with extents `dims` against the
/// phase table (out_len x in_len), replacing that extent.
std::vector<cplx> contract_axis(const std::vector<cplx>& in, std::vector<int>& dims, std::size_t axis,
                                const std::vector<cplx>& phase, int out_len) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t k = 0; k < axis; ++k) outer *= static_cast<std::size_t>(dims[k]);
  for (std::size_t k = axis + 1; k < dims.size(); ++k) inner *= static_cast<std::size_t>(dims[k]);
  const auto in_len = static_cast<std::size_t>(dims[axis]);
  const auto out_n = static_cast<std::size_t>(out_len);

  std::vector<cplx> out(outer * out_n * inner);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t x = 0; x < out_n; ++x)
      for (std::size_t j = 0; j < in_len; ++j) {
        const cplx ph = phase[x * in_len + j];
        const cplx* src = &in[(o * in_len + j) * inner];
        cplx* dst = &out[(o * out_n + x) * inner];
        for (std::size_t t = 0; t < inner; ++t) dst[t] += ph * src[t];
      }
  dims[axis] = out_len;
  return out;
}

}  // namespace

const std::complex<double>& CoefficientTable::at(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != coords) throw InvalidInput("CoefficientTable: wrong site rank");
  std::size_t flat = 0;
  for (int v : x) {
    if (std::abs(v) > cutoff) throw InvalidInput("CoefficientTable: site outside the box");
    flat = flat * static_cast<std::size_t>(side()) + static_cast<std::size_t>(v + cutoff);
  }
  return values[flat];
}

int CoefficientTable::shell_of(std::size_t flat) const {
  int shell = 0;
  for (int k = 0; k < coords; ++k) {
    shell = std::max(shell, std::abs(static_cast<int>(flat % static_cast<std::size_t>(side())) - cutoff));
    flat /= static_cast<std::size_t>(side());
  }
  return shell;
}

CoefficientTable lattice_coefficients(const std::vector<double>& f, const TorusGrid& grid, int cutoff) {
  if (cutoff < 0 || 2 * cutoff > grid.n())
    throw InvalidInput("lattice_coefficients: cutoff " + std::to_string(cutoff) +
                       " aliases on a grid with " + std::to_string(grid.n()) + " points per axis");
  int coords = 0;
  if (f.size() == grid.size()) coords = grid.dim();
  else if (f.size() == grid.size() * grid.size()) coords = 2 * grid.dim();
  else throw InvalidInput("lattice_coefficients: table size matches neither grid nor grid x grid");

  const int n = grid.n();
  const int side = 2 * cutoff + 1;
  std::vector<cplx> phase(static_cast<std::size_t>(side * n));
  for (int x = -cutoff; x <= cutoff; ++x)
    for (int j = 0; j < n; ++j)
      phase[static_cast<std::size_t>((x + cutoff) * n + j)] =
          std::polar(1.0 / n, grid.axis_node(j) * x);

  std::vector<cplx> t(f.begin(), f.end());
  std::vector<int> dims(static_cast<std::size_t>(coords), n);
  for (std::size_t axis = 0; axis < dims.size(); ++axis) t = contract_axis(t, dims, axis, phase, side);

  CoefficientTable out;
  out.coords = coords;
  out.cutoff = cutoff;
  out.values = std::move(t);
  return out;
}

DecayReport decay_fit(const CoefficientTable& c, int r_min, int r_max) {
  if (r_max > c.cutoff) throw InvalidInput("decay_fit: r_max exceeds the coefficient cutoff");
  if (r_min < 0 || r_max - r_min < 3) throw InvalidInput("decay_fit: need r_max - r_min >= 3");

  std::vector<double> peak(static_cast<std::size_t>(r_max + 1), 0.0);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    const int s = c.shell_of(i);
    if (s <= r_max) peak[static_cast<std::size_t>(s)] = std::max(peak[static_cast<std::size_t>(s)], std::abs(c.values[i]));
  }

  DecayReport rep;
  std::vector<double> xs, ys;
  for (int r = r_min; r <= r_max; ++r) {
    const double a = peak[static_cast<std::size_t>(r)];
    if (!(a >= 1e-14))
      throw DomainError("decay_fit: shell " + std::to_string(r) + " amplitude " + std::to_string(a) +
                        " is below 1e-14; lower r_max");
    rep.radii.push_back(r);
    rep.peak_amplitudes.push_back(a);
    xs.push_back(r);
    ys.push_back(std::log(a));
  }
  const LineFit fit = linear_fit(xs, ys);
  rep.rate = -fit.slope;
  rep.r2 = fit.r2;
  return rep;
}

double two_body_decay_rate_1d(const Momentum& k, const ModelParams& params) {
  if (params.dim != 1 || k.dim() != 1) throw InvalidInput("two_body_decay_rate_1d: d must be 1");
  if (std::abs(k[0]) >= kPi - 1e-6)
    throw DomainError("two_body_decay_rate_1d: k too close to pi, where the rate diverges");
  const double e = closed_form_1d(k, params);
  return std::acosh((2.0 - e) / (2.0 * std::cos(0.5 * k[0])));
}

}  // namespace triboson
