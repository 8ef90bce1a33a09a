// SPDX-License-Identifier: Apache-2.0

#include "ssw/config.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "ssw/evolve.hpp"
#include "ssw/io.hpp"
#include "ssw/spectrum.hpp"
#include "ssw/verify.hpp"

namespace ssw {

std::string ExperimentConfig::summary() const {
  std::ostringstream s;
  s << "command=" << command << "\nd=" << d << "\np=" << p << "\nepsilon=" << epsilon
    << "\nN=" << N << "\ndt_factor=" << dt_factor << "\ntau_end=" << tau_end
    << "\ntau_probe=" << tau_probe << "\nT0=" << T0 << "\ndelta=" << delta
    << "\nT_offset=" << T_offset << "\nseed=" << seed << "\nmode=" << mode
    << "\nperturb=" << perturb << "\nrefine_N=" << refine_N << "\n";
  return s.str();
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const ExperimentConfig& c) {
  if (c.command != "verify" && c.command != "spectrum" && c.command != "evolve" &&
      c.command != "rates" && c.command != "resolvent")
    throw UsageError("unknown command '" + c.command + "'");
  if (c.d < 5 || c.d % 2 == 0) throw UsageError("d must be odd and >= 5");
  if (!(c.p > 1.0)) throw UsageError("p must exceed 1");
  if (!(c.epsilon > 0.0)) throw UsageError("epsilon must be positive");
  if (c.N < 8) throw UsageError("N must be at least 8");
  if (!(c.dt_factor > 0.0 && c.dt_factor <= 2.0)) throw UsageError("dt_factor out of range");
  if (!(c.tau_end > 0.0) || !(c.tau_probe > 0.0)) throw UsageError("tau horizon must be positive");
  if (!(c.T0 > 0.0) || !(c.delta > 0.0)) throw UsageError("T0 and delta must be positive");
  if (c.mode != "full" && c.mode != "lower_regularity") throw UsageError("unknown mode");
  if (std::abs(c.T_offset) > c.delta) throw UsageError("T_offset outside the delta bracket");
}

SampledProfile build_perturbation(const ExperimentConfig& c, const ModelParams& params,
                                  const Grid& grid, double radius) {
  std::istringstream in(c.perturb);
  std::string kind;
  std::getline(in, kind, ':');
  auto next_value = [&in, &c](double fallback) {
    std::string tok;
    if (!std::getline(in, tok, ':')) return fallback;
    try {
      return std::stod(tok);
    } catch (const std::exception&) {
      throw UsageError("bad perturbation spec '" + c.perturb + "'");
    }
  };
  if (kind == "none") return zero_profile(radius);
  if (kind == "family") {
    const double dT = next_value(0.5 * c.delta);
    return family_difference_profile(params, c.T0 + dT, c.T0, radius);
  }
  if (kind == "gaussian") {
    const double amp = next_value(1e-3);
    const double width = next_value(0.5);
    return gaussian_profile(amp, width, radius);
  }
  if (kind == "random") {
    const double norm = next_value(1e-3);
    return random_even_perturbation(params, grid, c.seed, norm, radius);
  }
  throw UsageError("unknown perturbation kind '" + kind + "'");
}

int command_verify(const ExperimentConfig& c, const std::string& tag) {
  const auto results = verify_suite(c.d, c.p, c.epsilon, c.N, c.seed);
  bool all = true;
  std::printf("%-38s %14s %12s  %s\n", "check", "measured", "threshold", "status");
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%-38s %14.3e %12.1e  %s\n", r.name.c_str(), r.measured, r.threshold,
                r.pass ? "pass" : "FAIL");
  }
  write_json_file(c.out_dir + "/verify_" + tag + ".json", check_results_json(results));
  return all ? kExitOk : kExitNumerical;
}

int command_spectrum(const ExperimentConfig& c, const std::string& tag) {
  const ModelParams params = make_params(c.d, c.p, c.epsilon);
  const int refine = c.refine_N > 0 ? c.refine_N : 2 * c.N;
  const SpectrumReport report = matrix_spectrum(params, {c.N, refine});
  double rightmost = -1e300;
  for (const auto& rec : report.records)
    if (rec.persistent) rightmost = std::max(rightmost, rec.value.real());
  Json j = spectrum_json(report);
  j["rightmost_persistent"] = rightmost;
  write_json_file(c.out_dir + "/spectrum_" + tag + ".json", j);
  std::printf("spectrum: %zu eigenvalues, rightmost persistent %.9f (threshold %.4f)\n",
              report.records.size(), rightmost, report.threshold);
  return std::abs(rightmost - 1.0) <= 1e-6 ? kExitOk : kExitNumerical;
}

int command_evolve(const ExperimentConfig& c, const std::string& tag) {
  const ModelParams params = make_params(c.d, c.p, c.epsilon);
  const Grid grid = build_grid(c.N);
  const double radius = 1.05 * (c.T0 + c.delta);
  const SampledProfile v = build_perturbation(c, params, grid, radius);
  EvolveOptions opts;
  opts.dt_factor = c.dt_factor;
  const EvolutionTrace trace =
      run_evolution(params, grid, v, c.T0 + c.T_offset, c.T0, c.tau_end, opts);
  write_profile_file(c.out_dir + "/perturbation_" + tag + ".csv", v);
  write_trace_csv_file(c.out_dir + "/trace_" + tag + ".csv", trace);
  write_json_file(c.out_dir + "/trace_" + tag + ".json", trace_meta_json(trace));
  double peak = 0.0;
  for (double x : trace.full_norm) peak = std::max(peak, x);
  std::printf("evolve: %d samples to tau=%.2f, max norm %.3e%s\n", trace.size(),
              trace.taus.back(), peak, trace.aborted ? " (aborted)" : "");
  return trace.aborted ? kExitNumerical : kExitOk;
}

int command_rates(const ExperimentConfig& c, const std::string& tag) {
  const ModelParams params = make_params(c.d, c.p, c.epsilon);
  const Grid grid = build_grid(c.N);
  const double radius = 1.05 * (c.T0 + c.delta);
  const SampledProfile v = build_perturbation(c, params, grid, radius);
  ShootOptions opts;
  opts.dt_factor = c.dt_factor;
  opts.tau_probe = c.tau_probe;
  opts.final_tau_end = c.tau_end;
  opts.smallness = 0.0;  // the CLI trusts its own perturbation amplitudes
  const ShootResult shoot = tune_blowup_time(params, grid, v, c.T0, c.delta, opts);
  const RateMode mode = c.mode == "full" ? RateMode::full : RateMode::lower_regularity;
  const RateReport report = measure_convergence_rates(params, shoot, mode);

  write_trace_csv_file(c.out_dir + "/trace_" + tag + ".csv", shoot.trace);
  Json j = rate_report_json(report);
  j["T_star"] = shoot.T_star;
  j["iterations"] = shoot.iterations;
  j["final_unstable_coeff"] = shoot.final_unstable_coeff;
  write_json_file(c.out_dir + "/rates_" + tag + ".json", j);
  std::printf("rates: T_star=%.9f after %d runs; expected rate %.3f\n", shoot.T_star,
              shoot.iterations, report.expected);
  for (const auto& e : report.per_norm)
    std::printf("  %-16s fitted %8.4f  %s\n", e.label.c_str(), e.fitted,
                e.applicable ? (e.passed ? "pass" : "FAIL") : "n/a");
  return report.all_passed() ? kExitOk : kExitNumerical;
}

int command_resolvent(const ExperimentConfig& c, const std::string& tag) {
  const ModelParams params = make_params(c.d, c.p, c.epsilon);
  const Grid grid = build_grid(c.N);
  const double worst = checks::resolvent_max_relative(params, grid, c.seed, 20);
  Json j;
  j["max_relative_residual"] = worst;
  j["threshold"] = 1e-6;
  j["samples"] = 20;
  write_json_file(c.out_dir + "/resolvent_" + tag + ".json", j);
  std::printf("resolvent: max relative residual %.3e\n", worst);
  return worst <= 1e-6 ? kExitOk : kExitNumerical;
}

}  // namespace

int run_command(const ExperimentConfig& config) {
  const std::string tag = run_hash(config.summary());
  try {
    validate(config);
    std::filesystem::create_directories(config.out_dir);
    if (config.command == "verify") return command_verify(config, tag);
    if (config.command == "spectrum") return command_spectrum(config, tag);
    if (config.command == "evolve") return command_evolve(config, tag);
    if (config.command == "rates") return command_rates(config, tag);
    return command_resolvent(config, tag);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    try {
      std::filesystem::create_directories(config.out_dir);
      Json diag;
      diag["command"] = config.command;
      diag["error"] = e.what();
      diag["config"] = config.summary();
      write_json_file(config.out_dir + "/diagnostic_" + tag + ".json", diag);
    } catch (...) {
    }
    return kExitNumerical;
  }
}

}  // namespace ssw
