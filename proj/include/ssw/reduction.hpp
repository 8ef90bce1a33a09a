// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/model.hpp"

namespace ssw {

/// Coefficients of D_d u = sum_n a_n rho^{n+1} u^{(n)}, n = 0..m_d-2, where
/// D_d u = (rho^{-1} d/drho)^{(d-3)/2} (rho^{d-2} u). All a_n > 0 and the
/// leading coefficient is 1.
struct DCoefficients {
  int d = 5;
  Eigen::VectorXd coeffs;
};

/// Computed by the recursion D_{d+2} u = rho^{-1} (D_d [(.)^2 u])'.
DCoefficients d_coefficients(int d);

/// Coefficients c_j of nabla_rad^n u = sum_{j=1}^n c_j rho^{j-n} u^{(j)} for
/// n = 1..mmax (index [n-1][j-1]), where nabla_rad^n alternates d/drho and
/// the radial Laplacian.
std::vector<std::vector<double>> nabla_rad_coefficients(int d, int mmax);

struct NormReport {
  double sobolev_m = 0.0;       // H^{m_d} x H^{m_d-1} radial pair norm
  double sigma = 0.0;           // (Sigma_1(u1)^2 + Sigma_2(u2)^2)^{1/2}
  double d_norm = 0.0;          // Hdot2/Hdot1 + boundary term
  double lower_d_norm = 0.0;    // Hdot1/L2 variant of the p = 3 framework
  double lower_sobolev = 0.0;   // H^{m_d-1} x H^{m_d-2} radial pair norm
  std::array<double, 2> ratios{0.0, 0.0};  // d_norm and sigma over sobolev_m
};

/// Precomputed D_d/K_d machinery and norms for one (grid, d) combination.
/// All members are const after construction; instances are safe to share
/// across threads.
class Reduction {
public:
  Reduction(const Grid& grid, int d);

  const Grid& grid() const { return *grid_; }
  int d() const { return d_; }
  int m_d() const { return m_d_; }
  const DCoefficients& coefficients() const { return coeffs_; }

  Eigen::VectorXd apply_D(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply_K(const Eigen::VectorXd& w) const;

  /// w -> w/rho for w with w(0) = 0; the quotient at rho = 0 is w'(0).
  Eigen::VectorXd divide_by_rho(const Eigen::VectorXd& w) const;

  /// Radial Laplacian u'' + (d-1) u'/rho through coefficient space, for
  /// even smooth u. Noticeably quieter than the collocation matrix when the
  /// result feeds further derivatives.
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& u) const;

  // 1-d weighted Sobolev quantities on (0,1).
  double sigma1_norm(const Eigen::VectorXd& u) const;
  double sigma2_norm(const Eigen::VectorXd& u) const;
  /// Radial H^m norm: (sum_{n<=m} int rho^{d-1} |nabla_rad^n u|^2)^{1/2}.
  double sobolev_norm(const Eigen::VectorXd& u, int m) const;
  /// Radial Hdot^j seminorm: (int rho^{d-1} |nabla_rad^j u|^2)^{1/2}.
  double hj_seminorm(const Eigen::VectorXd& u, int j) const;

  double pair_sobolev_norm(const StatePair& u) const;        // (m_d, m_d-1)
  double lower_pair_sobolev_norm(const StatePair& u) const;  // (m_d-1, m_d-2)

  double d_inner(const StatePair& u, const StatePair& v) const;
  double d_norm(const StatePair& u) const;
  double lower_d_norm(const StatePair& u) const;

  NormReport norm_suite(const StatePair& state) const;

  /// || rho^{-alpha} f || / || rho^{-alpha+1} f' || for f vanishing to order
  /// alpha at 0; returns 0 for f = 0 and throws if only the denominator
  /// degenerates.
  double hardy_ratio(int alpha, const Eigen::VectorXd& f) const;

private:
  const Grid* grid_;
  int d_;
  int m_d_;
  DCoefficients coeffs_;
  std::vector<std::vector<double>> nabla_;            // c_j^{(d,n)}
  Eigen::PartialPivLU<Eigen::MatrixXd> div_solver_;   // rho D + I
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> j_solvers_;  // rho D + (m+1) I
};

// Spec-level free functions; one-off conveniences over the cached class.
Eigen::VectorXd apply_D(const DCoefficients& coeffs, const Grid& grid, const Eigen::VectorXd& u);
Eigen::VectorXd apply_K(int d, const Grid& grid, const Eigen::VectorXd& w);
NormReport norm_suite(const ModelParams& params, const Grid& grid, const StatePair& state);
double hardy_residual(int alpha, const Grid& grid, const Eigen::VectorXd& f);

/// Reflection extension E_m u of grid samples to [0, infinity): equals u on
/// [0,1], is C^m across rho = 1, and vanishes for rho >= 3/2.
class ExtendedProfile {
public:
  ExtendedProfile(const Grid& grid, Eigen::VectorXd u, int m);

  double operator()(double rho) const;
  int order() const { return m_; }
  /// Derivative values u^{(k)}(1), k = 0..m, used by the matching polynomial.
  const Eigen::VectorXd& boundary_derivatives() const { return du1_; }

private:
  double h_match(double rho) const;  // the reflected + matched branch on (1, 3/2)

  const Grid* grid_;
  Eigen::VectorXd u_;
  Eigen::VectorXd du1_;
  int m_;
};

/// Errors when m is not one of {m_d - 1, m_d}.
ExtendedProfile extend_profile(const ModelParams& params, int m, const Grid& grid,
                               Eigen::VectorXd u);

/// Radial H^m(R^d) norm of the extension, integrating over [0, 3/2] piecewise
/// (the extension is only C^m at the seam rho = 1).
double extension_radial_norm(const ModelParams& params, const ExtendedProfile& ext, int m);

}  // namespace ssw
