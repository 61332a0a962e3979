#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace triboson::cli;
  RunConfig cfg;

  CLI::App app{"Three bosons on a lattice with a zero-range attraction"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; flags given on the command line win");

  app.add_option("--dim", cfg.dim, "Lattice dimension, 1 or 2");
  app.add_option("--mu", cfg.mu, "Coupling, negative");
  app.add_option("--K", cfg.K, "Total quasi-momentum, e.g. 0 or pi/2,0");
  app.add_option("--grid-n", cfg.grid_n, "Points per axis (default 32 for d=1, 8 for d=2)");
  app.add_option("--tol", cfg.tol, "Root tolerance");
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--jobs", cfg.jobs, "Worker threads");
  app.add_flag("--with-oracle", cfg.with_oracle, "bound-states: cross-check against exact diagonalization");
  app.add_flag("--quick", cfg.quick, "validate: reduced case lists");
  app.add_option("--k-points", cfg.k_points, "twobody-band: sweep points per axis");
  app.add_option("--K-points", cfg.K_points, "bands: sweep points per axis");
  app.add_option("--wavefunctions", cfg.wavefunctions, "bound-states: CSV path for eigenfunctions");
  app.add_flag("--flip-bs-sign", cfg.flip_bs_sign)->group("");

  for (const char* name : {"twobody-band", "ess-spectrum", "bound-states", "bands", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("twobody-band")->description("Pair level e_mu(k) and its band over a k sweep");
  app.get_subcommand("ess-spectrum")->description("Essential spectrum at one K");
  app.get_subcommand("bound-states")->description("Three-body levels below the essential spectrum at one K");
  app.get_subcommand("bands")->description("Bound-state bands over a K sweep");
  app.get_subcommand("validate")->description("Run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  return run(cfg);
}
