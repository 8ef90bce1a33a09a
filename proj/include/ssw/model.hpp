// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "ssw/grid.hpp"

namespace ssw {

/// Model parameters for the focusing wave equation u_tt - Lap u = |u|^{p-1} u
/// in d space dimensions together with the constants derived from (d, p).
struct ModelParams {
  int d = 5;          // odd space dimension, d >= 5
  double p = 3.0;     // nonlinearity exponent
  double epsilon = 0.05;

  double c_p = 0.0;                // ODE profile amplitude [2(p+1)/(p-1)^2]^{1/(p-1)}
  double s_p = 0.0;                // critical regularity d/2 - 2/(p-1)
  int m_d = 0;                     // (d+1)/2
  double mu_p = 0.0;               // min{2/(p-1), 1} - epsilon
  double diss_bound = 0.0;         // -2/(p-1)
  double spectral_threshold = 0.0; // max{-2/(p-1), -1}
  bool superconformal = false;     // p > (d+3)/(d-1)

  double two_over_pm1() const { return 2.0 / (p - 1.0); }
  double pp1_over_pm1() const { return (p + 1.0) / (p - 1.0); }
  // p c_p^{p-1} = 2p(p+1)/(p-1)^2, the zeroth-order coefficient of the
  // linearized nonlinearity.
  double linearized_coeff() const { return 2.0 * p * (p + 1.0) / ((p - 1.0) * (p - 1.0)); }
};

/// Pair of real functions sampled on one grid (phi_1, phi_2) or (psi_1, psi_2).
struct StatePair {
  Eigen::VectorXd first;
  Eigen::VectorXd second;

  int size() const { return static_cast<int>(first.size()); }
  bool all_finite() const { return first.allFinite() && second.allFinite(); }

  Eigen::VectorXd stacked() const;
  static StatePair from_stacked(const Eigen::VectorXd& v);
  static StatePair zero(int n);

  StatePair operator+(const StatePair& o) const { return {first + o.first, second + o.second}; }
  StatePair operator-(const StatePair& o) const { return {first - o.first, second - o.second}; }
  StatePair operator*(double a) const { return {a * first, a * second}; }
};

/// Builds ModelParams and validates the (d, p, epsilon) combination.
/// Subconformal exponents are rejected unless allow_subconformal is set;
/// p = 3 is always accepted (the lower-regularity variant holds for all
/// d >= 5 and the analysis extends to every p > 1).
ModelParams make_params(int d, double p, double epsilon = 0.05, bool allow_subconformal = false);

/// The ODE blowup solution c_p (T-t)^{-2/(p-1)} at time t < T.
double ode_profile(const ModelParams& params, double T, double t);

/// Static solution of the similarity-coordinate system: (c_p, 2 c_p/(p-1)).
StatePair static_pair(const ModelParams& params, const Grid& grid);

/// Symmetry mode g = (1, (p+1)/(p-1)) sampled on the grid; eigenfunction of
/// the linearized generator at eigenvalue 1.
StatePair symmetry_mode(const ModelParams& params, const Grid& grid);

/// Scaling part of the initial data operator:
/// V(v,T)(rho) = (T^{2/(p-1)} v1(T rho), T^{(p+1)/(p-1)} v2(T rho)).
StatePair scaled_data_V(const SampledProfile& v, double T, const ModelParams& params,
                        const Grid& grid);

/// kappa(T) = ((T/T0)^{2/(p-1)} c_p, (T/T0)^{(p+1)/(p-1)} (2/(p-1)) c_p).
Eigen::Vector2d kappa(double T, double T0, const ModelParams& params);

/// Initial data operator U(v,T) = V(v,T) + kappa(T) - kappa(T0); this is the
/// initial perturbation Phi(0) away from the static solution.
StatePair initial_data_U(const SampledProfile& v, double T, double T0, const ModelParams& params,
                         const Grid& grid);

/// The blowup family u_T as an initial-data profile: rows sample
/// (u_T(0,r), d_t u_T(0,r)) on the given radius nodes (constant in r).
SampledProfile family_profile(const ModelParams& params, double T, const Eigen::VectorXd& radii);

}  // namespace ssw
