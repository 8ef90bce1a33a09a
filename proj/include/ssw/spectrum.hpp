// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/linop.hpp"
#include "ssw/model.hpp"
#include "ssw/specfun.hpp"

namespace ssw {

/// Hypergeometric parameters of the eigenvalue ODE after the D_d reduction
/// and the substitution z = rho^2.
struct HypergeometricParams {
  Complex a, b, c;
};

HypergeometricParams hyper_params(Complex lambda, const ModelParams& params);

/// Connection coefficient c0(lambda) = Gamma(a+b+1-c) Gamma(1-c) /
/// (Gamma(a+1-c) Gamma(b+1-c)); its zeros are the admissible eigenvalues.
/// Poles of the numerator are returned as infinity, never NaN.
Complex connection_coeff(Complex lambda, const ModelParams& params);

/// Newton iteration on c0 from a given start; derivative by central
/// difference. Returns the polished root.
Complex newton_polish_root(Complex lambda0, const ModelParams& params, int max_iter = 50,
                           double tol = 1e-13);

/// First root family lambda = 1 - 2k and second family
/// lambda = -2k - 2p/(p-1) - 2/(p-1), k = 0..count-1.
std::vector<double> analytic_family_one(int count);
std::vector<double> analytic_family_two(const ModelParams& params, int count);

struct EigenvalueRecord {
  std::complex<double> value;
  bool persistent = false;
  int matched_family = -1;     // 1 or 2, -1 when unmatched
  double matched_value = 0.0;
  double match_distance = 0.0;
  double drift = 0.0;          // movement under grid refinement
};

struct SpectrumReport {
  double threshold = 0.0;  // max{-2/(p-1), -1}
  std::vector<std::complex<double>> analytic_unstable;      // family points above threshold
  std::vector<std::complex<double>> analytic_stable_heads;  // first few stable family points
  std::vector<std::complex<double>> matrix_eigs;            // finest resolution
  std::vector<EigenvalueRecord> records;                    // one per matrix eigenvalue
  std::vector<int> resolutions;
};

/// Analytic part only: the two families classified against the threshold.
SpectrumReport analytic_spectrum(const ModelParams& params, int count);

/// Samples of w(rho) = rho 2F1(a+1-c, b+1-c; 2-c; rho^2), the D_d-reduced
/// eigenfunction branch vanishing at 0. lambda must sit on a root family.
Eigen::VectorXcd eigenfunction_profile(Complex lambda, const ModelParams& params,
                                       const Grid& grid);

/// L2 residual of the reduced eigenvalue ODE under spectral differentiation,
/// relative to the profile norm.
double eigenfunction_ode_residual(Complex lambda, const ModelParams& params, const Grid& grid);

/// Dense spectra at the given resolutions with resolution-persistence
/// filtering (an eigenvalue is persistent when it moves no more than
/// persist_tol under refinement to the next resolution) and matching against
/// the analytic families.
SpectrumReport matrix_spectrum(const ModelParams& params, const std::vector<int>& resolutions,
                               double persist_tol = 1e-4);

}  // namespace ssw
