// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/linop.hpp"
#include "ssw/model.hpp"
#include "ssw/reduction.hpp"

namespace ssw {

/// Pointwise nonlinear remainder N(x) = |c_p+x|^{p-1}(c_p+x) - c_p^p
/// - p c_p^{p-1} x; reduces to x^3 + 3 c_p x^2 for p = 3.
double nonlinearity_scalar(const ModelParams& params, double x);
Eigen::VectorXd nonlinearity_N(const ModelParams& params, const Eigen::VectorXd& phi1);

/// Right-hand side of the full similarity-coordinate system for psi (not the
/// perturbation); the static pair is an equilibrium of this field.
StatePair similarity_rhs(const ModelParams& params, const Grid& grid, const StatePair& psi);

struct EvolveOptions {
  double dt_factor = 0.5;      // dt = factor * min node spacing
  int sample_target = 400;
  double overflow_guard = 1e8;
};

/// RK4 march of d_tau Phi = L Phi + N(Phi) from Phi(0) = U(v, T).
/// The caller supplies the assembled full generator, projection and norm
/// machinery so sweeps over T reuse them.
EvolutionTrace run_evolution(const ModelParams& params, const Grid& grid,
                             const GeneratorMatrix& gen, const ProjectionData& proj,
                             const Reduction& red, const SampledProfile& v, double T, double T0,
                             double tau_end, const EvolveOptions& options = {});

/// Convenience overload assembling the machinery internally.
EvolutionTrace run_evolution(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                             double T, double T0, double tau_end,
                             const EvolveOptions& options = {});

/// H^{m_d} x H^{m_d-1}(B^d_R) norm of an initial-data profile over the ball
/// of radius R (used for the smallness gate).
double profile_pair_norm(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                         double R);

struct ShootOptions {
  double dt_factor = 0.5;
  int sample_target = 400;
  double tau_probe = 8.0;       // horizon for the unstable-coefficient read-off
  double final_tau_end = 0.0;   // tuned-run horizon; 0 means tau_probe
  int max_iter = 60;
  double t_tol_rel = 1e-9;      // bracket convergence relative to T0
  double smallness = 1e-3;      // gate on ||v||; <= 0 disables the gate
  double overflow_guard = 1e8;
};

struct ShootResult {
  double T_star = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  double final_unstable_coeff = 0.0;
  EvolutionTrace trace;  // tuned run
  bool converged = false;
};

/// No sign change of the unstable coefficient over the bracket.
struct ShootBracketError : std::runtime_error {
  ShootBracketError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), coeff_lo(lo), coeff_hi(hi) {}
  double coeff_lo, coeff_hi;
};

/// Bisection plus secant polish on T against the sign of the late-time
/// unstable coefficient e^{-tau} <l, Phi(tau)>; the computable counterpart of
/// cancelling the symmetry-mode component of the data.
ShootResult tune_blowup_time(const ModelParams& params, const Grid& grid,
                             const GeneratorMatrix& gen, const ProjectionData& proj,
                             const Reduction& red, const SampledProfile& v, double T0,
                             double delta, const ShootOptions& options = {});

ShootResult tune_blowup_time(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                             double T0, double delta, const ShootOptions& options = {});

enum class RateMode { full, lower_regularity };

struct RateEntry {
  std::string label;
  double fitted = 0.0;
  bool applicable = true;  // false when the norm is identically ~0
  std::pair<double, double> window{0.0, 0.0};
  bool passed = false;
};

struct RateReport {
  RateMode mode = RateMode::full;
  double expected = 0.0;  // mu_p, or 1/2 - epsilon in the lower framework
  std::vector<RateEntry> per_norm;
  bool all_passed() const {
    for (const auto& e : per_norm)
      if (!e.passed) return false;
    return true;
  }
};

/// Fits the decay of the Hdot^j norms of phi_1 (j = 0..m) and of the pair
/// norm over a late-time window of the tuned trace.
RateReport measure_convergence_rates(const ModelParams& params, const ShootResult& shoot,
                                     RateMode mode);

/// Synthetic perturbation generators for the CLI and tests; profiles are
/// sampled on a Chebyshev radius grid covering [0, radius].
SampledProfile zero_profile(double radius, int samples = 65);
SampledProfile family_difference_profile(const ModelParams& params, double T_star, double T0,
                                         double radius, int samples = 65);
SampledProfile gaussian_profile(double amplitude, double width, double radius, int samples = 65);
SampledProfile random_even_perturbation(const ModelParams& params, const Grid& grid,
                                        std::uint64_t seed, double target_norm, double radius,
                                        int samples = 65);

}  // namespace ssw
