// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/model.hpp"

namespace ssw {
namespace checks {

// Operator identity residuals: max discrete-L2 residual over a seeded corpus
// of random even polynomials (odd admissible inputs for the K side).
double d_lambda_commutator(const Grid& grid, int d, std::uint64_t seed, int count);
double d_laplacian_commutator(const Grid& grid, int d, std::uint64_t seed, int count);
double kd_inverse(const Grid& grid, int d, std::uint64_t seed, int count);
double k_lambda_commutator(const Grid& grid, int d, std::uint64_t seed, int count);
double k_laplacian_commutator(const Grid& grid, int d, std::uint64_t seed, int count);

/// || L g - g || for the assembled full generator (discrete L2 of the pair).
double symmetry_mode_residual(const ModelParams& params, const Grid& grid);

/// max over the corpus of [Re(L0 u|u)_D + (2/(p-1))||u||_D^2] / ||u||_D^2.
double dissipativity_max_relative(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                  int count);

/// max over random smooth f of ||(mu - L0) u - f|| / ||f||.
double resolvent_max_relative(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                              int count);

struct RatioStats {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// d_norm / pair Sobolev norm over the corpus.
RatioStats norm_equivalence_ratios(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                   int count);
/// Sigma norm / pair Sobolev norm over the corpus.
RatioStats sigma_equivalence_ratios(const ModelParams& params, const Grid& grid,
                                    std::uint64_t seed, int count);
/// Lower-regularity d_norm / lower pair Sobolev norm.
RatioStats lower_equivalence_ratios(const ModelParams& params, const Grid& grid,
                                    std::uint64_t seed, int count);

/// max Hardy ratio over test functions rho^alpha * (random polynomial).
double hardy_max_ratio(const Grid& grid, int alpha, std::uint64_t seed, int count);

struct ExtensionStats {
  double max_constant = 0.0;  // ||E u||_{H^{m_d}} / Sigma_1(u)
  double min_constant = 0.0;  // ||u||_{H^{m_d}(B)} / ||E u||_{H^{m_d}}
  double seam_error = 0.0;    // worst derivative mismatch across rho = 1, k <= m
};

ExtensionStats extension_bounds(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                int count);

struct LipschitzScaling {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

/// Regression of ||N(u)-N(v)|| / ||u-v|| against ||u||+||v|| over seeded
/// small pairs.
LipschitzScaling lipschitz_scaling(const ModelParams& params, const Grid& grid,
                                   std::uint64_t seed, int shapes, int amplitudes);

}  // namespace checks

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// The identity/norm/dissipativity suite behind the CLI verify command.
std::vector<CheckResult> verify_suite(int d, double p, double epsilon, int N, std::uint64_t seed);

}  // namespace ssw
