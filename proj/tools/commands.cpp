#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "triboson/acceptance.hpp"
#include "triboson/bsolver.hpp"
#include "triboson/error.hpp"
#include "triboson/esspec.hpp"
#include "triboson/oracle.hpp"
#include "triboson/twobody.hpp"

namespace triboson::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Rounds to 12 significant digits so the JSON writer prints at most those.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt(v).c_str(), nullptr);
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json momentum(const Momentum& p) { return nums({p.components().begin(), p.components().end()}); }

json interval(const Interval& i) { return json::array({num(i.lo), num(i.hi)}); }

/// Writes to cfg.out, or stdout when it is empty.
void emit(const RunConfig& cfg, const std::string& text, const std::string& path = "") {
  const std::string& target = path.empty() ? cfg.out : path;
  if (target.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + target);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + "\n";
}

std::vector<std::string> axis_names(const std::string& base, int dim) {
  if (dim == 1) return {base};
  return {base + "_x", base + "_y"};
}

/// Equispaced sweep over [-pi, pi] with both ends, `m` points per axis.
std::vector<std::vector<double>> sweep(int dim, int m) {
  std::vector<double> axis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) axis[static_cast<std::size_t>(i)] = -kPi + kTwoPi * i / (m - 1);
  std::vector<std::vector<double>> pts;
  if (dim == 1)
    for (double a : axis) pts.push_back({a});
  else
    for (double a : axis)
      for (double b : axis) pts.push_back({a, b});
  return pts;
}

Momentum to_momentum(const std::vector<double>& c) { return Momentum(static_cast<int>(c.size()), c); }

ModelParams params_of(const RunConfig& cfg) { return ModelParams{cfg.dim, cfg.mu}; }

TorusGrid grid_of(const RunConfig& cfg) { return TorusGrid(cfg.dim, cfg.grid_n); }

Momentum K_of(const RunConfig& cfg) { return to_momentum(parse_momentum(cfg.K, cfg.dim)); }

BSOptions bs_options(const RunConfig& cfg, bool nested) {
  BSOptions o;
  o.exchange_factor = cfg.flip_bs_sign ? -2.0 : 2.0;
  o.exec = nested ? Exec::serial : Exec::parallel;
  return o;
}

json ladder_json(const LadderReport& r) {
  json j;
  j["tau_op"] = num(r.tau_op);
  j["e_min"] = num(r.e_min);
  j["delta0"] = num(r.delta0);
  j["z"] = nums(r.z);
  j["counts"] = r.counts;
  json ties = json::array();
  for (bool t : r.ties) ties.push_back(t);
  j["ties"] = ties;
  j["converged"] = r.converged;
  j["stable_from"] = r.stable_from;
  j["resolution_floor"] = num(r.resolution_floor);
  return j;
}

json thresholds_json(const Thresholds& t) {
  json j;
  j["tau_ess"] = num(t.tau_ess);
  j["tau_grid"] = num(t.tau_grid);
  j["tau_op"] = num(t.tau_op);
  j["e_min"] = num(t.e_min);
  j["p_min"] = momentum(t.p_min);
  j["degenerate_minimum"] = t.degenerate_minimum;
  return j;
}

json crosscheck_json(const CrosscheckReport& r) {
  json j;
  j["passed"] = r.passed;
  j["failure"] = r.failure;
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"z", num(s.z)}, {"oracle_count", s.oracle_count}, {"bs_count", s.bs_count}, {"tie", s.tie}});
  j["samples"] = samples;
  j["oracle_energies"] = nums(r.oracle_energies);
  j["bs_energies"] = nums(r.bs_energies);
  j["max_energy_delta"] = num(r.max_energy_delta);
  j["max_residual"] = num(r.max_residual);
  j["max_s3_defect"] = num(r.max_s3_defect);
  j["counts_match"] = r.counts_match;
  j["energies_match"] = r.energies_match;
  j["eigenfunctions_ok"] = r.eigenfunctions_ok;
  return j;
}

json header(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["dim"] = cfg.dim;
  j["mu"] = num(cfg.mu);
  j["grid_n"] = cfg.grid_n;
  j["tol"] = num(cfg.tol);
  return j;
}

void require_format(const RunConfig& cfg, const char* only) {
  if (cfg.format != only) throw UsageError(cfg.command + " writes " + only + " only");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

double parse_angle(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw UsageError("empty momentum component");
  double sign = 1.0;
  if (t[0] == '-' || t[0] == '+') {
    if (t[0] == '-') sign = -1.0;
    t.erase(0, 1);
  }
  const auto p = t.find("pi");
  if (p == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("cannot parse momentum component '" + raw + "'");
    return sign * v;
  }
  // [a*]pi[/b]
  double factor = 1.0, divisor = 1.0;
  const std::string pre = t.substr(0, p), post = t.substr(p + 2);
  try {
    if (!pre.empty()) {
      if (pre.back() != '*') throw UsageError("");
      factor = std::stod(pre.substr(0, pre.size() - 1));
    }
    if (!post.empty()) {
      if (post[0] != '/') throw UsageError("");
      std::size_t used = 0;
      divisor = std::stod(post.substr(1), &used);
      if (used != post.size() - 1 || divisor == 0.0) throw UsageError("");
    }
  } catch (const std::exception&) {
    throw UsageError("cannot parse momentum component '" + raw + "'");
  }
  return sign * factor * kPi / divisor;
}

std::vector<double> parse_momentum(const std::string& text, int dim) {
  if (text.empty()) return std::vector<double>(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
  if (static_cast<int>(out.size()) != dim)
    throw UsageError("--K needs " + std::to_string(dim) + " component(s), got " + std::to_string(out.size()));
  return out;
}

RunConfig normalized(RunConfig cfg) {
  if (cfg.dim != 1 && cfg.dim != 2) throw UsageError("--dim must be 1 or 2");
  if (!(cfg.mu < 0.0) || !std::isfinite(cfg.mu)) throw UsageError("--mu must be a negative number");
  if (cfg.grid_n == 0) cfg.grid_n = cfg.dim == 1 ? 32 : 8;
  if (cfg.grid_n < 8 || cfg.grid_n % 2) throw UsageError("--grid-n must be even and >= 8");
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3)) throw UsageError("--tol must lie in (0, 1e-3]");
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (cfg.k_points < 2 || cfg.K_points < 2) throw UsageError("sweep sizes must be >= 2");
  if (cfg.format.empty()) cfg.format = (cfg.command == "twobody-band" || cfg.command == "bands") ? "csv" : "json";
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  parse_momentum(cfg.K, cfg.dim);
  return cfg;
}

int cmd_twobody_band(const RunConfig& cfg) {
  const ModelParams params = params_of(cfg);
  const TorusGrid start(cfg.dim, 16);
  const auto pts = sweep(cfg.dim, cfg.k_points);
  std::vector<double> e(pts.size()), lo(pts.size()), hi(pts.size());
  std::vector<std::string> errors(pts.size());

#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      const Momentum k = to_momentum(pts[i]);
      e[i] = eigenvalue(k, params, start, cfg.tol);
      const Interval b = pair_band(k);
      lo[i] = b.lo;
      hi[i] = b.hi;
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  }
  for (const auto& msg : errors)
    if (!msg.empty()) throw Error(msg);

  bool ok = true;
  for (std::size_t i = 0; i < pts.size(); ++i) ok = ok && lo[i] - e[i] > 0.0;

  if (cfg.format == "csv") {
    std::vector<std::string> head = axis_names("k", cfg.dim);
    for (const char* c : {"e_mu", "band_lo", "band_hi", "gap"}) head.push_back(c);
    std::string text = csv_line(head);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<std::string> row;
      for (double c : pts[i]) row.push_back(fmt(c));
      for (double v : {e[i], lo[i], hi[i], lo[i] - e[i]}) row.push_back(fmt(v));
      text += csv_line(row);
    }
    emit(cfg, text);
  } else {
    json j = header(cfg);
    json rows = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({{"k", nums(pts[i])}, {"e_mu", num(e[i])}, {"band_lo", num(lo[i])},
                      {"band_hi", num(hi[i])}, {"gap", num(lo[i] - e[i])}});
    j["rows"] = rows;
    emit(cfg, dump(j));
  }
  if (!ok) {
    std::cerr << "twobody-band: some level does not lie below its band\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_ess_spectrum(const RunConfig& cfg) {
  require_format(cfg, "json");
  const ModelParams params = params_of(cfg);
  const Momentum K = K_of(cfg);
  const TorusGrid grid = grid_of(cfg);
  const EssentialSpectrum es = essential_spectrum(K, params, grid, cfg.tol);
  const double witness = channel_value(K, K.scaled(2.0 / 3.0), params, TorusGrid(cfg.dim, 16), cfg.tol);

  json j = header(cfg);
  j["K"] = momentum(K);
  j["branch"] = interval(es.branch);
  j["band"] = interval(es.band);
  json parts = json::array();
  for (const auto& p : es.union_set.parts) parts.push_back(interval(p));
  j["union"] = parts;
  j["tau_ess"] = num(es.tau_ess);
  j["p_min"] = momentum(es.p_min);
  j["degenerate_minimum"] = es.degenerate_minimum;
  j["witness"] = {{"k", momentum(K.scaled(2.0 / 3.0))}, {"value", num(witness)}, {"e_min", num(three_band_min(K))}};
  emit(cfg, dump(j));

  if (!(es.tau_ess < es.band.lo) || !(witness < three_band_min(K))) {
    std::cerr << "ess-spectrum: tau_ess is not below the three-particle band\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_bound_states(const RunConfig& cfg) {
  require_format(cfg, "json");
  const ModelParams params = params_of(cfg);
  const Momentum K = K_of(cfg);
  const TorusGrid grid = grid_of(cfg);
  const BirmanSchwinger bs(K, params, grid, bs_options(cfg, false));

  json j = header(cfg);
  j["K"] = momentum(K);
  j["thresholds"] = thresholds_json(bs.thresholds());

  const CountTotal total = bs.count_total();
  if (!total.report.converged) {
    j["converged"] = false;
    j["count"] = total.count;
    j["protocol_report"] = ladder_json(total.report);
    emit(cfg, dump(j));
    std::cerr << "bound-states: count ladder did not settle within 20 rungs\n";
    return kNonConvergence;
  }

  const bool want_f = !cfg.wavefunctions.empty();
  const BoundStateSet set = bs.bound_states(std::min(cfg.tol, 1e-9), want_f);
  j["converged"] = true;
  j["count"] = set.count;
  j["energies"] = nums(set.energies);
  j["residuals"] = nums(set.residuals);
  j["fredholm"] = nums(set.fredholm);
  json deg = json::array();
  for (bool d : set.degenerate) deg.push_back(d);
  j["degenerate"] = deg;
  j["protocol_report"] = ladder_json(set.report);

  int code = kOk;
  for (double e : set.energies)
    if (!(e < set.thresholds.tau_op)) code = kValidationFailure;

  if (cfg.with_oracle) {
    const CrosscheckReport r = crosscheck(K, params, grid, bs_options(cfg, false));
    j["crosscheck"] = crosscheck_json(r);
    if (!r.passed) code = kValidationFailure;
  }
  emit(cfg, dump(j));

  if (want_f) {
    std::vector<std::string> head = axis_names("p", cfg.dim);
    for (const auto& q : axis_names("q", cfg.dim)) head.push_back(q);
    for (std::size_t s = 0; s < set.wavefunctions.size(); ++s) head.push_back("f_" + std::to_string(s + 1));
    std::string text = csv_line(head);
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::string> row;
        for (double c : grid.node(i).components()) row.push_back(fmt(c));
        for (double c : grid.node(k).components()) row.push_back(fmt(c));
        for (const auto& f : set.wavefunctions) row.push_back(fmt(f[i * n + k]));
        text += csv_line(row);
      }
    emit(cfg, text, cfg.wavefunctions);
  }
  if (code) std::cerr << "bound-states: validation failed\n";
  return code;
}

int cmd_bands(const RunConfig& cfg) {
  const ModelParams params = params_of(cfg);
  const TorusGrid grid = grid_of(cfg);
  const auto pts = sweep(cfg.dim, cfg.K_points);
  const bool nested = cfg.jobs > 1;

  struct Row {
    Thresholds th;
    std::vector<double> energies;
    bool converged = true;
    std::string error;
  };
  std::vector<Row> rows(pts.size());

#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      const BirmanSchwinger bs(to_momentum(pts[i]), params, grid, bs_options(cfg, nested));
      rows[i].th = bs.thresholds();
      if (!bs.count_total().report.converged) {
        rows[i].converged = false;
        continue;
      }
      rows[i].energies = bs.bound_states(std::min(cfg.tol, 1e-9)).energies;
    } catch (const NonConvergence&) {
      rows[i].converged = false;
    } catch (const std::exception& ex) {
      rows[i].error = ex.what();
    }
  }
  for (const auto& r : rows)
    if (!r.error.empty()) throw Error(r.error);

  std::size_t m = 0;
  for (const auto& r : rows) m = std::max(m, r.energies.size());

  int code = kOk;
  for (const auto& r : rows)
    for (double e : r.energies)
      if (!(e < r.th.tau_ess)) code = kValidationFailure;

  if (cfg.format == "csv") {
    std::vector<std::string> head = axis_names("K", cfg.dim);
    head.push_back("tau_ess");
    head.push_back("E_min");
    for (std::size_t s = 0; s < m; ++s) head.push_back("E_" + std::to_string(s + 1));
    std::string text = csv_line(head);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<std::string> row;
      for (double c : pts[i]) row.push_back(fmt(c));
      row.push_back(fmt(rows[i].th.tau_ess));
      row.push_back(fmt(rows[i].th.e_min));
      for (std::size_t s = 0; s < m; ++s) row.push_back(s < rows[i].energies.size() ? fmt(rows[i].energies[s]) : "");
      text += csv_line(row);
    }
    emit(cfg, text);
  } else {
    json j = header(cfg);
    json arr = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i)
      arr.push_back({{"K", nums(pts[i])}, {"tau_ess", num(rows[i].th.tau_ess)}, {"E_min", num(rows[i].th.e_min)},
                     {"energies", nums(rows[i].energies)}, {"converged", rows[i].converged}});
    j["rows"] = arr;
    emit(cfg, dump(j));
  }

  // Smoothness of E_1 along the sweep (d=1: the line; d=2: each row of the K grid).
  std::vector<double> second;
  const std::size_t line = static_cast<std::size_t>(cfg.K_points);
  for (std::size_t start = 0; start < pts.size(); start += line)
    for (std::size_t i = start + 1; i + 1 < start + line; ++i) {
      const auto& a = rows[i - 1].energies;
      const auto& b = rows[i].energies;
      const auto& c = rows[i + 1].energies;
      if (a.empty() || b.empty() || c.empty()) continue;
      second.push_back(std::abs(a[0] - 2.0 * b[0] + c[0]));
    }
  const double max2 = second.empty() ? 0.0 : *std::max_element(second.begin(), second.end());
  const double med2 = median(second);
  json side;
  side["command"] = "bands";
  side["samples"] = second.size();
  side["max_second_difference"] = num(max2);
  side["median_second_difference"] = num(med2);
  side["ratio"] = med2 > 0.0 ? num(max2 / med2) : json(nullptr);
  side["smooth"] = med2 > 0.0 ? max2 <= 10.0 * med2 : max2 == 0.0;
  json missing = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!rows[i].converged) missing.push_back(nums(pts[i]));
  side["nonconverged_K"] = missing;
  if (cfg.out.empty()) std::cerr << dump(side);
  else emit(cfg, dump(side), cfg.out + ".smoothness.json");

  if (!missing.empty()) {
    std::cerr << "bands: count ladder did not settle at " << missing.size() << " K point(s)\n";
    return kNonConvergence;
  }
  if (code) std::cerr << "bands: an energy is not below tau_ess\n";
  return code;
}

int cmd_validate(const RunConfig& cfg) {
  AcceptanceOptions opts;
  opts.quick = cfg.quick;
  opts.exchange_factor = cfg.flip_bs_sign ? -2.0 : 2.0;
  std::vector<std::string> failed;
  json results = json::array();
  for (int id : acceptance_ids()) {
    const CriterionResult r = run_acceptance(id, opts);
    std::cout << format_result(r) << std::endl;
    if (!r.passed) failed.push_back(std::to_string(id) + " " + r.name);
    results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                       {"seconds", num(r.seconds)}});
  }
  if (!cfg.out.empty()) {
    json j;
    j["command"] = "validate";
    j["quick"] = cfg.quick;
    j["results"] = results;
    emit(cfg, dump(j));
  }
  if (failed.empty()) return kOk;
  for (const auto& f : failed) std::cerr << "FAILED: " << f << "\n";
  return kValidationFailure;
}

int run(const RunConfig& raw) {
  try {
    const RunConfig cfg = normalized(raw);
    omp_set_num_threads(cfg.jobs);
    if (cfg.command == "twobody-band") return cmd_twobody_band(cfg);
    if (cfg.command == "ess-spectrum") return cmd_ess_spectrum(cfg);
    if (cfg.command == "bound-states") return cmd_bound_states(cfg);
    if (cfg.command == "bands") return cmd_bands(cfg);
    if (cfg.command == "validate") return cmd_validate(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace triboson::cli
