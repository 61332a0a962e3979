#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "triboson/kernels.hpp"

namespace triboson {

struct AcceptanceOptions {
  /// Reduced case lists for a fast smoke run.
  bool quick = false;
  /// Passed to every Birman-Schwinger assembly; -2 flips the prefactor sign.
  double exchange_factor = 2.0;
  Exec exec = Exec::parallel;
  /// Per-case progress lines, if set.
  std::ostream* log = nullptr;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Ids 1..10.
std::vector<int> acceptance_ids();
std::string acceptance_name(int id);

/// Runs one criterion. Exceeding its runtime budget counts as a failure.
CriterionResult run_acceptance(int id, const AcceptanceOptions& opts = {});

/// Single formatted table line for a result.
std::string format_result(const CriterionResult& r);

}  // namespace triboson
