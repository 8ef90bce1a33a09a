// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/model.hpp"
#include "ssw/reduction.hpp"

namespace ssw {

/// Discretization of the linearized generator L = L0 + L'.
///
/// The regularity conditions d_rho phi_j(0) = 0 are imposed by constraint
/// rows replacing the rho = 0 collocation rows: the node-0 value of each
/// component is eliminated through the Neumann reconstruction
/// phi(0) = recon . phi(1..N), and `matrix` acts on the reduced vector
/// (phi_1(1..N); phi_2(1..N)). Interior rows use the radial Laplacian with
/// the l'Hopital limit available at the origin; no row is imposed at rho = 1
/// (characteristic outflow).
struct GeneratorMatrix {
  Eigen::MatrixXd matrix;      // reduced, 2N x 2N
  Eigen::VectorXd recon;       // node-0 reconstruction weights (length N)
  const Grid* grid = nullptr;
  ModelParams params;
  bool with_perturbation = true;
  std::vector<int> boundary_rows;  // full-system rows replaced by the constraint

  int reduced_size() const { return static_cast<int>(matrix.rows()); }

  /// Drop the node-0 values: (phi_1(1..N); phi_2(1..N)).
  Eigen::VectorXd reduce(const StatePair& s) const;
  /// Rebuild the full grid pair, node 0 via the Neumann reconstruction.
  StatePair reconstruct(const Eigen::VectorXd& reduced) const;
  /// The generator applied to a full-grid pair (reduce, apply, rebuild).
  StatePair apply(const StatePair& s) const;
};

GeneratorMatrix assemble_generator(const ModelParams& params, const Grid& grid,
                                   bool include_perturbation);

/// Radial Laplacian matrix with the l'Hopital row at rho = 0; constants are
/// annihilated exactly.
Eigen::MatrixXd radial_laplacian(int d, const Grid& grid);
Eigen::MatrixXd radial_laplacian(const ModelParams& params, const Grid& grid);

/// Re(L0 u | u)_D + (2/(p-1)) ||u||_D^2; nonpositive up to discretization
/// error for admissible states.
double dissipativity_residual(const ModelParams& params, const Grid& grid, const StatePair& u);
double dissipativity_residual(const GeneratorMatrix& gen_free, const Reduction& red,
                              const StatePair& u);

/// The same residual evaluated through the explicit identity of the energy
/// estimate: -1/2 (||w1''||^2 + ||w2'||^2) - 1/2 |w1''(1) - w2'(1)|^2 with
/// w_j = D_d u_j. Used to cross-check the inner-product route.
double dissipativity_expected_residual(const Reduction& red, const StatePair& u);

/// Explicit resolvent of L0 at mu = 1 - 2/(p-1): returns u with
/// (mu - L0) u = f, built from the closed-form integral construction. The
/// removable quotient at rho = 1 is evaluated by l'Hopital using F(1).
StatePair resolvent_at_mu(const ModelParams& params, const Grid& grid, const StatePair& f);

/// Rank-one spectral projection onto the symmetry mode, built from the
/// right/left eigenvectors of the reduced generator at the eigenvalue
/// nearest 1 (inverse-iteration polished).
struct ProjectionData {
  StatePair right_mode;        // full-grid pair, first component ~1
  Eigen::VectorXd right_reduced;
  Eigen::VectorXd left_mode;   // reduced; scaled so <left, right_reduced> = 1
  double normalization = 0.0;  // raw left/right pairing before scaling
  double lambda = 0.0;

  double coefficient(const Eigen::VectorXd& reduced) const { return left_mode.dot(reduced); }
  Eigen::VectorXd apply(const Eigen::VectorXd& reduced) const {
    return right_reduced * coefficient(reduced);
  }
  Eigen::VectorXd remove(const Eigen::VectorXd& reduced) const {
    return reduced - apply(reduced);
  }
};

/// Throws if no eigenvalue lies within 1e-4 of 1 (discretization failure).
ProjectionData spectral_projection(const GeneratorMatrix& gen);

struct TraceMeta {
  int d = 0;
  double p = 0.0;
  double epsilon = 0.0;
  int N = 0;
  double dt = 0.0;
  double T = 0.0;
  double T0 = 0.0;
  std::string kind;  // "linear" or "nonlinear"
};

/// Time series of an evolution run. hj_norms[k][j] is the Hdot^j(B^d)
/// seminorm of phi_1 at sample k, j = 0..m_d; lower_norm is the pair norm of
/// the lower-regularity framework.
struct EvolutionTrace {
  std::vector<double> taus;
  std::vector<double> full_norm;
  std::vector<double> stable_norm;
  std::vector<double> unstable_coeff;
  std::vector<double> lower_norm;
  std::vector<std::vector<double>> hj_norms;
  TraceMeta meta;
  bool aborted = false;

  int size() const { return static_cast<int>(taus.size()); }
};

/// RK4 march of d_tau Phi = L Phi recording norms and the unstable-mode
/// coefficient. Aborts (without throwing) when the norm exceeds the guard.
EvolutionTrace linear_propagate(const GeneratorMatrix& gen, const ProjectionData& proj,
                                const StatePair& state0, double tau_end, double dt,
                                int sample_target = 400, double overflow_guard = 1e8);

/// Least-squares slope of log(values) vs tau over [t0, t1], sign-flipped so
/// decay rates are positive. Requires >= 10 positive samples in the window.
double fit_log_slope(const std::vector<double>& taus, const std::vector<double>& values,
                     double t0, double t1);
double fit_decay_rate(const EvolutionTrace& trace, double t0, double t1);

/// CFL-style default step: dt = factor * (smallest node spacing).
double stable_dt(const Grid& grid, double factor);

}  // namespace ssw
