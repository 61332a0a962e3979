#include <cstdio>
#include <iostream>
#include <string>

#include "triboson/acceptance.hpp"

int main(int argc, char** argv) {
  triboson::AcceptanceOptions opts;
  int only = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) only = std::stoi(argv[++i]);
    else if (a == "--quick") opts.quick = true;
    else if (a == "--verbose") verbose = true;
    else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--quick] [--verbose]\n");
      return 2;
    }
  }
  if (verbose) opts.log = &std::cout;

  bool all = true;
  for (int id : triboson::acceptance_ids()) {
    if (only && id != only) continue;
    const auto r = triboson::run_acceptance(id, opts);
    std::cout << triboson::format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
