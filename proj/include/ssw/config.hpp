// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace ssw {

// Exit codes of run_command / the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // invalid configuration
inline constexpr int kExitNumerical = 3;   // a suite or run failed

struct ExperimentConfig {
  std::string command;  // verify | spectrum | evolve | rates | resolvent

  int d = 5;
  double p = 3.0;
  double epsilon = 0.05;

  int N = 64;
  double dt_factor = 0.5;
  double tau_end = 12.0;
  double tau_probe = 8.0;
  double T0 = 1.0;
  double delta = 0.1;
  double T_offset = 0.0;  // evolve: run at T = T0 + T_offset without tuning

  std::uint64_t seed = 42;
  std::string out_dir = "out";
  std::string mode = "full";     // full | lower_regularity
  std::string perturb = "none";  // none | family:<dT> | gaussian:<amp>[:<width>] | random:<norm>
  int refine_N = 0;              // spectrum: second resolution, 0 means 2N

  std::string summary() const;  // key=value dump used for run hashing
};

/// Validates fields and dispatches; writes artifacts under out_dir. Returns
/// kExitOk, kExitUsage or kExitNumerical; failures leave a machine-readable
/// diagnostic JSON next to the outputs.
int run_command(const ExperimentConfig& config);

}  // namespace ssw
