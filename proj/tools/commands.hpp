#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace triboson::cli {

enum ExitCode { kOk = 0, kValidationFailure = 1, kUsage = 2, kNonConvergence = 3 };

/// Bad flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int dim = 1;
  double mu = -1.0;
  /// Raw text, e.g. "0", "pi/2,0". Empty means the origin.
  std::string K;
  /// 0 picks 32 for d=1 and 8 for d=2.
  int grid_n = 0;
  double tol = 1e-9;
  /// Empty writes to stdout.
  std::string out;
  /// Empty picks the command default (csv for sweeps, json otherwise).
  std::string format;
  int jobs = 1;
  bool with_oracle = false;
  bool quick = false;
  /// Sweep sizes per axis for twobody-band and bands.
  int k_points = 33;
  int K_points = 17;
  /// bound-states: optional CSV of reconstructed wavefunctions.
  std::string wavefunctions;
  /// validate: flips the sign of the BS prefactor (mutation check).
  bool flip_bs_sign = false;
};

/// "1.5", "-pi/4", "2*pi/3", "pi". Throws UsageError on anything else.
double parse_angle(const std::string& text);
std::vector<double> parse_momentum(const std::string& text, int dim);

/// Checks invariants and fills defaults. Throws UsageError.
RunConfig normalized(RunConfig cfg);

int cmd_twobody_band(const RunConfig& cfg);
int cmd_ess_spectrum(const RunConfig& cfg);
int cmd_bound_states(const RunConfig& cfg);
int cmd_bands(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);

/// Dispatch on cfg.command, mapping library errors to exit codes.
int run(const RunConfig& cfg);

}  // namespace triboson::cli
