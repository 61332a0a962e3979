#include "triboson/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>

#include "triboson/bsolver.hpp"
#include "triboson/error.hpp"
#include "triboson/esspec.hpp"
#include "triboson/oracle.hpp"
#include "triboson/realspace.hpp"
#include "triboson/twobody.hpp"

namespace triboson {

namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string momentum_str(const Momentum& K) {
  std::string s = fmt("%.6g", K[0]);
  if (K.dim() == 2) s += "," + fmt("%.6g", K[1]);
  return "(" + s + ")";
}

void note(const AcceptanceOptions& o, const std::string& line) {
  if (o.log) *o.log << "    " << line << '\n';
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

BSOptions bs_options(const AcceptanceOptions& o) { return BSOptions{o.exchange_factor, o.exec}; }

// 1: closed-form two-body levels in d=1.
Outcome closed_form_agreement(const AcceptanceOptions& o) {
  Outcome out;
  double worst = 0.0;
  const TorusGrid start(1, 16);
  for (double mu : {-0.5, -1.0, -2.0, -5.0}) {
    const ModelParams p = ModelParams::make(1, mu);
    for (int j = 0; j <= 32; ++j) {
      const Momentum k{-kPi + kTwoPi * j / 32.0};
      const double err = std::abs(eigenvalue(k, p, start, 1e-10) - closed_form_1d(k, p));
      worst = std::max(worst, err);
    }
  }
  out.detail = fmt("max |e - closed form| = %.3g over 132 points", worst);
  if (!(worst <= 1e-9)) out.fail(out.detail);
  (void)o;
  return out;
}

// 2: evenness and minimum at k = 0.
Outcome pair_level_shape(const AcceptanceOptions& o) {
  Outcome out;
  double worst_even = 0.0, min_margin = INFINITY;
  for (int d : {1, 2}) {
    const int n = d == 1 ? 64 : (o.quick ? 16 : 32);
    const TorusGrid grid(d, n);
    const ModelParams p = ModelParams::make(d, -1.0);
    std::vector<double> e(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) e[i] = eigenvalue(grid.node(i), p, grid);
    const double e0 = e[0];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst_even = std::max(worst_even, std::abs(e[i] - e[grid.neg(i)]));
      if (i != 0) min_margin = std::min(min_margin, e[i] - e0);
    }
    note(o, fmt("d=%g: e(0) = %.12g", d, e0));
  }
  out.detail = fmt("max |e(k)-e(-k)| = %.3g, min e(k)-e(0) = %.3g", worst_even, min_margin);
  if (!(worst_even <= 1e-12) || !(min_margin > 0.0)) out.fail(out.detail);
  return out;
}

// 3: strict gap between tau_ess and the three-particle band bottom.
Outcome band_inequality(const AcceptanceOptions& o) {
  Outcome out;
  double min_margin = INFINITY;
  int violations = 0, total = 0;
  std::string worst_case;
  const std::vector<double> mus = o.quick ? std::vector<double>{-1.0} : std::vector<double>{-0.5, -1.0, -2.0};
  for (int d : {1, 2}) {
    const TorusGrid kgrid(d, 16);
    for (double mu : mus) {
      const ModelParams p = ModelParams::make(d, mu);
      int case_viol = 0;
      double case_min = INFINITY;
      for (std::size_t i = 0; i < kgrid.size(); ++i) {
        const Momentum K = kgrid.node(i);
        const double tau = channel_branch(K, p, kgrid).range.lo;
        const double margin = three_band_min(K) - tau;
        ++total;
        case_min = std::min(case_min, margin);
        if (!(margin > 1e-8)) ++case_viol;
        if (margin < min_margin) {
          min_margin = margin;
          worst_case = "d=" + std::to_string(d) + " mu=" + fmt("%g", mu) + " K=" + momentum_str(K);
        }
      }
      violations += case_viol;
      note(o, fmt("d=%g mu=%g", d, mu) + fmt(": min margin %.3g, points at or below 1e-8: %g", case_min, case_viol));
    }
  }
  out.detail = std::to_string(violations) + " of " + std::to_string(total) +
               " K-points have margin <= 1e-8; smallest margin " + fmt("%.3g", min_margin) + " at " + worst_case;
  if (violations > 0) out.fail(out.detail);
  return out;
}

struct CrossCase {
  int dim;
  int n;
  double K;
  double mu;
};

std::vector<CrossCase> cross_cases(bool quick) {
  std::vector<CrossCase> cases;
  const std::vector<int> ns = quick ? std::vector<int>{16} : std::vector<int>{16, 32};
  const std::vector<double> mus = quick ? std::vector<double>{-1.0, -2.0} : std::vector<double>{-0.5, -1.0, -2.0, -5.0};
  for (int n : ns)
    for (double K : {0.0, 0.5 * kPi, kPi})
      for (double mu : mus) cases.push_back({1, n, K, mu});
  for (double mu : quick ? std::vector<double>{-2.0} : std::vector<double>{-1.0, -2.0}) cases.push_back({2, 8, 0.0, mu});
  return cases;
}

// 4, 5, 8 share the oracle-vs-solver sweep.
Outcome oracle_sweep(const AcceptanceOptions& o, int which) {
  Outcome out;
  int samples = 0, mismatched = 0, states = 0;
  double worst_delta = 0.0, worst_residual = 0.0, worst_defect = 0.0;
  for (const auto& c : cross_cases(o.quick)) {
    const ModelParams p = ModelParams::make(c.dim, c.mu);
    const Momentum K = Momentum::uniform(c.dim, c.K);
    const std::string tag = "d=" + std::to_string(c.dim) + " n=" + std::to_string(c.n) + " K=" +
                            momentum_str(K) + " mu=" + fmt("%g", c.mu);
    const CrosscheckReport r = crosscheck(K, p, TorusGrid(c.dim, c.n), bs_options(o));
    for (const auto& s : r.samples) {
      ++samples;
      if (s.oracle_count != s.bs_count) ++mismatched;
    }
    states += static_cast<int>(r.oracle_energies.size());
    worst_delta = std::max(worst_delta, r.max_energy_delta);
    worst_residual = std::max(worst_residual, r.max_residual);
    worst_defect = std::max(worst_defect, r.max_s3_defect);
    note(o, tag + ": " + std::to_string(r.oracle_energies.size()) + " states, " +
                (r.passed ? std::string("ok") : r.failure));

    if (which == 4 && !r.counts_match) out.fail(tag + ": counts differ");
    if (which == 5 && (r.bs_energies.size() != r.oracle_energies.size() || !r.energies_match) &&
        !r.oracle_energies.empty())
      out.fail(tag + ": " + (r.failure.empty() ? std::string("energy mismatch") : r.failure));
    if (which == 5 && r.oracle_energies.empty() && !r.bs_energies.empty()) out.fail(tag + ": spurious solver states");
    if (which == 8 && !r.eigenfunctions_ok && !r.bs_energies.empty())
      out.fail(tag + fmt(": residual %.3g, S3 defect %.3g", r.max_residual, r.max_s3_defect));
    if (which == 8 && r.bs_energies.size() != r.oracle_energies.size())
      out.fail(tag + ": solver did not find every state");
  }
  std::string summary;
  if (which == 4) summary = std::to_string(mismatched) + " mismatches in " + std::to_string(samples) + " z-samples";
  if (which == 5) summary = fmt("max |E_solver - E_oracle| = %.3g", worst_delta) + " over " + std::to_string(states) + " states";
  if (which == 8) summary = fmt("max residual %.3g, max S3 defect %.3g", worst_residual, worst_defect);
  out.detail = out.passed ? summary : out.detail + "; " + summary;
  return out;
}

// 6: count stability under grid refinement.
Outcome finiteness(const AcceptanceOptions& o) {
  Outcome out;
  struct Case {
    int dim;
    double mu;
    std::vector<int> ns;
  };
  std::vector<Case> cases = {{1, -1.0, {16, 32, 64}}, {1, -2.0, {16, 32, 64}}, {2, -2.0, {8, 16}}};
  if (o.quick) cases = {{1, -1.0, {16, 32}}, {2, -2.0, {8}}};
  std::string summary;
  for (const auto& c : cases) {
    const ModelParams p = ModelParams::make(c.dim, c.mu);
    std::vector<int> counts;
    for (int n : c.ns) {
      const CountTotal t = count_total(Momentum::zero(c.dim), p, TorusGrid(c.dim, n), bs_options(o));
      if (!t.report.converged) out.fail(fmt("d=%g mu=%g", c.dim, c.mu) + " n=" + std::to_string(n) + ": ladder did not settle");
      counts.push_back(t.count);
    }
    std::string seq;
    for (std::size_t i = 0; i < counts.size(); ++i) seq += (i ? "," : "") + std::to_string(counts[i]);
    const std::string tag = fmt("d=%g mu=%g", c.dim, c.mu) + " counts " + seq;
    note(o, tag);
    summary += (summary.empty() ? "" : "; ") + tag;
    if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end())
      out.fail(tag + " change under refinement");
  }
  out.detail = out.passed ? summary : out.detail + "; " + summary;
  return out;
}

// 7: quadratic vanishing of the channel determinant at its minimum.
Outcome quadratic_vanishing(const AcceptanceOptions& o) {
  Outcome out;
  std::string summary;
  for (int d : {1, 2}) {
    const ModelParams p = ModelParams::make(d, d == 1 ? -1.0 : -2.0);
    const TorusGrid grid(d, d == 1 ? 32 : 16);
    for (double k0 : {0.0, 0.25 * kPi}) {
      std::array<double, 2> kc{k0, 0.0};
      const Momentum K(d, std::span<const double>(kc.data(), static_cast<std::size_t>(d)));
      const QuadraticCheck q = quadratic_vanishing_check(K, p, grid);
      const std::string tag = "d=" + std::to_string(d) + " K=" + momentum_str(K) +
                              fmt(": slope %.4f, r2 %.6f", q.slope, q.r2);
      note(o, tag);
      summary += (summary.empty() ? "" : "; ") + tag;
      if (!(q.slope >= 1.9 && q.slope <= 2.1 && q.r2 > 0.999)) out.fail(tag);
    }
  }
  out.detail = out.passed ? summary : out.detail;
  return out;
}

// 9: exponential decay in coordinate space.
Outcome exponential_decay(const AcceptanceOptions& o) {
  Outcome out;
  std::string summary;
  const TorusGrid grid(1, 128);
  for (double mu : {-1.0, -2.0}) {
    const ModelParams p = ModelParams::make(1, mu);
    for (double k0 : {0.0, 0.5 * kPi}) {
      const Momentum k{k0};
      const TwoBodyLevel level = eigenfunction(k, p, grid);
      DecayReport rep = decay_fit(lattice_coefficients(level.eigenfunction, grid, 12), 3, 12);
      rep.theoretical_rate = two_body_decay_rate_1d(k, p);
      const double rel = std::abs(rep.rate - *rep.theoretical_rate) / *rep.theoretical_rate;
      const std::string tag = fmt("two-body mu=%g k=%.4f", mu, k0) +
                              fmt(": rate %.6f (analytic %.6f)", rep.rate, *rep.theoretical_rate);
      note(o, tag + fmt(", r2 %.6f", rep.r2));
      if (!(rel <= 0.02 && rep.r2 > 0.999)) out.fail(tag);
    }
  }
  {
    const ModelParams p = ModelParams::make(1, -2.0);
    const TorusGrid g3(1, 64);
    const BirmanSchwinger bs(Momentum::zero(1), p, g3, bs_options(o));
    const BoundStateSet set = bs.bound_states();
    if (set.energies.empty()) {
      out.fail("three-body d=1 mu=-2: no bound state found");
    } else {
      const std::vector<double> f = bs.reconstruct(set.energies.front());
      const DecayReport rep = decay_fit(lattice_coefficients(f, g3, 12), 2, 10);
      const std::string tag = fmt("three-body ground state E=%.8f: rate %.4f", set.energies.front(), rep.rate) +
                              fmt(", r2 %.5f", rep.r2);
      note(o, tag);
      summary = tag;
      if (!(rep.rate > 0.0 && rep.r2 > 0.99)) out.fail(tag);
    }
  }
  out.detail = out.passed ? "two-body rates within 2%; " + summary : out.detail;
  return out;
}

// 10: sign changes of the Fredholm determinant.
Outcome fredholm_consistency(const AcceptanceOptions& o) {
  Outcome out;
  const ModelParams p = ModelParams::make(1, -1.0);
  const BirmanSchwinger bs(Momentum::zero(1), p, TorusGrid(1, 32), bs_options(o));
  const CountTotal total = bs.count_total();
  const double z_hi = total.report.z.back();
  const double z_lo = bs.thresholds().e_min - 3.0 * std::abs(p.mu);
  int changes = 0;
  double prev = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double z = z_lo + (z_hi - z_lo) * s / 199.0;
    const double d = bs.fredholm_det(z);
    if (s > 0 && (d > 0.0) != (prev > 0.0)) ++changes;
    prev = d;
  }
  out.detail = std::to_string(changes) + " sign changes on 200 samples, count_total " + std::to_string(total.count);
  if (changes != total.count || !total.report.converged) out.fail(out.detail);
  return out;
}

struct Entry {
  const char* name;
  double budget;
  std::function<Outcome(const AcceptanceOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"closed-form two-body agreement (d=1)", 10.0, closed_form_agreement},
      {"two-body level even with minimum at k=0", 60.0, pair_level_shape},
      {"tau_ess below three-particle band, margin > 1e-8", 300.0, band_inequality},
      {"Birman-Schwinger count equals oracle count", 600.0, [](const AcceptanceOptions& o) { return oracle_sweep(o, 4); }},
      {"bound-state energies match oracle within 1e-7", 600.0, [](const AcceptanceOptions& o) { return oracle_sweep(o, 5); }},
      {"bound-state count stable under grid refinement", 600.0, finiteness},
      {"channel determinant vanishes quadratically", 120.0, quadratic_vanishing},
      {"reconstructed eigenfunctions: residual and S3 symmetry", 600.0, [](const AcceptanceOptions& o) { return oracle_sweep(o, 8); }},
      {"exponential decay of bound states", 120.0, exponential_decay},
      {"Fredholm determinant sign changes equal count", 60.0, fredholm_consistency},
  };
  return entries;
}

}  // namespace

std::vector<int> acceptance_ids() {
  std::vector<int> ids;
  for (std::size_t i = 0; i < registry().size(); ++i) ids.push_back(static_cast<int>(i) + 1);
  return ids;
}

std::string acceptance_name(int id) {
  if (id < 1 || id > static_cast<int>(registry().size())) throw InvalidInput("unknown acceptance criterion");
  return registry()[static_cast<std::size_t>(id - 1)].name;
}

CriterionResult run_acceptance(int id, const AcceptanceOptions& opts) {
  const Entry& e = registry().at(static_cast<std::size_t>(id - 1));
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  r.budget_seconds = e.budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome out = e.run(opts);
    r.passed = out.passed;
    r.detail = out.detail;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > r.budget_seconds) {
    r.passed = false;
    r.detail += fmt(" [over budget: %.1f s > %.0f s]", r.seconds, r.budget_seconds);
  }
  return r;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  [%2d] %-56s %8.2f s  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return std::string(head) + r.detail;
}

}  // namespace triboson
