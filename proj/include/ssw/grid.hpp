// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssw {

/// Chebyshev-Gauss-Lobatto collocation grid on [0,1].
///
/// Nodes are rho_k = (1 - cos(pi k / N)) / 2, k = 0..N, so both endpoints
/// are included and the ordering is increasing. Differentiation matrices are
/// exact on polynomials up to degree N; quadrature weights are
/// Clenshaw-Curtis and integrate polynomials up to degree N exactly.
struct Grid {
  int N = 0;                     // polynomial degree; N+1 nodes
  Eigen::VectorXd nodes;         // strictly increasing, nodes[0]=0, nodes[N]=1
  Eigen::MatrixXd diff1;         // first derivative at nodes
  Eigen::MatrixXd diff2;         // second derivative at nodes
  Eigen::VectorXd quad_weights;  // integration over [0,1], positive, sum 1
  Eigen::MatrixXd antideriv;     // (antideriv*f)[k] ~ integral_0^{rho_k} f
  Eigen::VectorXd bary_weights;  // barycentric weights of the nodes
  Eigen::MatrixXd to_cheb;       // node values -> Chebyshev coefficients
  Eigen::MatrixXd from_cheb;     // Chebyshev coefficients -> node values

  int size() const { return N + 1; }
  double min_spacing() const { return nodes[1] - nodes[0]; }

  /// Spectral derivative through coefficient space. Composes with far less
  /// roundoff than repeated diff1 multiplies; use it wherever several
  /// derivative orders stack.
  Eigen::VectorXd derivative(const Eigen::VectorXd& v) const;
  Eigen::VectorXd derivative(const Eigen::VectorXd& v, int order) const;

  // Discrete L2(0,1) norm by quadrature.
  double l2_norm(const Eigen::VectorXd& v) const {
    return std::sqrt(quad_weights.dot(v.cwiseProduct(v)));
  }
  double integrate(const Eigen::VectorXd& v) const { return quad_weights.dot(v); }
};

Grid build_grid(int N);

/// Barycentric interpolation of grid samples at x in [0,1]; exact at nodes.
double interpolate(const Grid& grid, const Eigen::VectorXd& values, double x);

/// Externally sampled radial profile: rows (r, u, u_t) with increasing radii.
struct SampledProfile {
  Eigen::VectorXd radii;
  Eigen::VectorXd values1;  // u
  Eigen::VectorXd values2;  // u_t
  double max_radius = 0.0;

  int size() const { return static_cast<int>(radii.size()); }
  // Barycentric interpolation on the ingest nodes.
  double interp1(double r) const;
  double interp2(double r) const;

private:
  mutable Eigen::VectorXd bary_;  // lazily built weights for the ingest grid
  const Eigen::VectorXd& bary_weights() const;
  double interp(const Eigen::VectorXd& vals, double r) const;
};

SampledProfile make_profile(Eigen::VectorXd radii, Eigen::VectorXd v1, Eigen::VectorXd v2);

// CSV ingest errors, each a distinct type so callers can tell them apart.
struct ProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProfileEmptyError : ProfileError {
  using ProfileError::ProfileError;
};
struct ProfileParseError : ProfileError {
  using ProfileError::ProfileError;
};
struct ProfileMonotonicityError : ProfileError {
  using ProfileError::ProfileError;
};

/// Reads "r,u,ut" rows (header optional, LF line endings, dot decimal).
SampledProfile ingest_profile(std::istream& in);
SampledProfile ingest_profile_file(const std::string& path);

/// Writes a profile in the same CSV dialect; round-trips bit-identically.
void write_profile(std::ostream& out, const SampledProfile& profile);
void write_profile_file(const std::string& path, const SampledProfile& profile);

}  // namespace ssw
