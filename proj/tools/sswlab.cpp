// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: similarity-coordinate evolution, spectral
// diagnostics and the verification suite for radial blowup perturbations.

#include <CLI11.hpp>

#include "ssw/config.hpp"

namespace {

void add_common(CLI::App* cmd, ssw::ExperimentConfig& cfg) {
  cmd->add_option("--d", cfg.d, "space dimension (odd, >= 5)");
  cmd->add_option("--p", cfg.p, "nonlinearity exponent");
  cmd->add_option("--epsilon", cfg.epsilon, "rate loss epsilon");
  cmd->add_option("--N", cfg.N, "collocation degree");
  cmd->add_option("--dt-factor", cfg.dt_factor, "dt = factor * min node spacing");
  cmd->add_option("--tau-end", cfg.tau_end, "evolution horizon");
  cmd->add_option("--tau-probe", cfg.tau_probe, "shooting probe horizon");
  cmd->add_option("--T0", cfg.T0, "reference blowup time");
  cmd->add_option("--delta", cfg.delta, "blowup-time bracket half width");
  cmd->add_option("--T-offset", cfg.T_offset, "evolve at T = T0 + offset");
  cmd->add_option("--seed", cfg.seed, "random corpus seed");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--mode", cfg.mode, "rate framework: full | lower_regularity");
  cmd->add_option("--perturb", cfg.perturb,
                  "perturbation: none | family:<dT> | gaussian:<amp>[:<width>] | random:<norm>");
  cmd->add_option("--refine-N", cfg.refine_N, "spectrum refinement resolution (default 2N)");
  cmd->set_config("--config", "", "flat key=value configuration file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for stable ODE blowup in radial semilinear waves"};
  app.require_subcommand(1);

  ssw::ExperimentConfig cfg;
  for (const char* name : {"verify", "spectrum", "evolve", "rates", "resolvent"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ssw::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return ssw::run_command(cfg);
}
