// SPDX-License-Identifier: Apache-2.0

#include "ssw/linop.hpp"

#include <cmath>
#include <stdexcept>

namespace ssw {

Eigen::MatrixXd radial_laplacian(int d, const Grid& grid) {
  const int n = grid.size();
  Eigen::MatrixXd lap = grid.diff2;
  for (int k = 1; k < n; ++k) {
    lap.row(k) += (d - 1.0) / grid.nodes[k] * grid.diff1.row(k);
  }
  lap.row(0) = d * grid.diff2.row(0);
  // constants lie in the kernel analytically; pin the diagonal accordingly
  for (int k = 0; k < n; ++k) lap(k, k) -= lap.row(k).sum();
  return lap;
}

Eigen::MatrixXd radial_laplacian(const ModelParams& params, const Grid& grid) {
  return radial_laplacian(params.d, grid);
}

Eigen::VectorXd GeneratorMatrix::reduce(const StatePair& s) const {
  const int N = grid->N;
  Eigen::VectorXd v(2 * N);
  v.head(N) = s.first.tail(N);
  v.tail(N) = s.second.tail(N);
  return v;
}

StatePair GeneratorMatrix::reconstruct(const Eigen::VectorXd& reduced) const {
  const int N = grid->N;
  StatePair s = StatePair::zero(N + 1);
  s.first.tail(N) = reduced.head(N);
  s.second.tail(N) = reduced.tail(N);
  s.first[0] = recon.dot(reduced.head(N));
  s.second[0] = recon.dot(reduced.tail(N));
  return s;
}

StatePair GeneratorMatrix::apply(const StatePair& s) const {
  return reconstruct(matrix * reduce(s));
}

GeneratorMatrix assemble_generator(const ModelParams& params, const Grid& grid,
                                   bool include_perturbation) {
  const int n = grid.size();
  const int N = grid.N;
  GeneratorMatrix gen;
  gen.grid = &grid;
  gen.params = params;
  gen.with_perturbation = include_perturbation;
  gen.boundary_rows = {0, n};  // the rho = 0 collocation row of each component

  // Neumann reconstruction: choose phi(0) so the interpolant has phi'(0) = 0.
  gen.recon.resize(N);
  for (int j = 1; j <= N; ++j) gen.recon[j - 1] = -grid.diff1(0, j) / grid.diff1(0, 0);

  Eigen::MatrixXd advect = -(grid.nodes.asDiagonal() * grid.diff1);
  Eigen::MatrixXd lap = radial_laplacian(params, grid);

  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  auto A11 = full.topLeftCorner(n, n);
  auto A12 = full.topRightCorner(n, n);
  auto A21 = full.bottomLeftCorner(n, n);
  auto A22 = full.bottomRightCorner(n, n);

  A11 = advect;
  A11.diagonal().array() -= params.two_over_pm1();
  A12 = Eigen::MatrixXd::Identity(n, n);
  A21 = lap;
  if (include_perturbation) A21.diagonal().array() += params.linearized_coeff();
  A22 = advect;
  A22.diagonal().array() -= params.pp1_over_pm1();

  // Eliminate the node-0 values: lift interior vectors onto the constraint
  // manifold, apply the full operator, restrict to interior rows.
  Eigen::MatrixXd lift = Eigen::MatrixXd::Zero(2 * n, 2 * N);
  for (int k = 1; k <= N; ++k) {
    lift(k, k - 1) = 1.0;
    lift(n + k, N + k - 1) = 1.0;
  }
  lift.row(0).head(N) = gen.recon.transpose();
  lift.row(n).tail(N) = gen.recon.transpose();

  Eigen::MatrixXd restricted(2 * N, 2 * n);
  restricted.setZero();
  for (int k = 1; k <= N; ++k) {
    restricted(k - 1, k) = 1.0;
    restricted(N + k - 1, n + k) = 1.0;
  }
  gen.matrix = restricted * full * lift;
  return gen;
}

double dissipativity_residual(const GeneratorMatrix& gen_free, const Reduction& red,
                              const StatePair& u) {
  if (gen_free.with_perturbation)
    throw std::invalid_argument("dissipativity_residual: pass the free generator L0");
  const ModelParams& params = gen_free.params;
  const StatePair lu = gen_free.apply(u);
  const double value = red.d_inner(lu, u) + params.two_over_pm1() * red.d_inner(u, u);
  if (!std::isfinite(value)) throw std::runtime_error("dissipativity_residual: non-finite value");
  return value;
}

double dissipativity_residual(const ModelParams& params, const Grid& grid, const StatePair& u) {
  const GeneratorMatrix gen = assemble_generator(params, grid, false);
  const Reduction red(grid, params.d);
  return dissipativity_residual(gen, red, u);
}

double dissipativity_expected_residual(const Reduction& red, const StatePair& u) {
  const Grid& grid = red.grid();
  const Eigen::VectorXd w1 = red.apply_D(u.first);
  const Eigen::VectorXd w2 = red.apply_D(u.second);
  const Eigen::VectorXd w1pp = grid.derivative(w1, 2);
  const Eigen::VectorXd w2p = grid.derivative(w2);
  const int last = grid.N;
  const double corner = w1pp(last) - w2p(last);
  return -0.5 * (grid.quad_weights.dot(w1pp.cwiseAbs2()) + grid.quad_weights.dot(w2p.cwiseAbs2())) -
         0.5 * corner * corner;
}

StatePair resolvent_at_mu(const ModelParams& params, const Grid& grid, const StatePair& f) {
  const int n = grid.size();
  if (f.size() != n) throw std::invalid_argument("resolvent_at_mu: size mismatch");
  const Reduction red(grid, params.d);

  const Eigen::VectorXd w1f = red.apply_D(f.first);
  const Eigen::VectorXd w2f = red.apply_D(f.second);
  const Eigen::VectorXd F = w2f + w1f + grid.nodes.cwiseProduct(grid.derivative(w1f));

  // G(rho) = int_rho^1 F
  const Eigen::VectorXd AF = grid.antideriv * F;
  Eigen::VectorXd G = Eigen::VectorXd::Constant(n, AF[n - 1]) - AF;

  // q = G / (1 - rho^2); the numerator vanishes at rho = 1, where the
  // quotient equals F(1)/2.
  Eigen::VectorXd q(n);
  for (int k = 0; k < n - 1; ++k) q[k] = G[k] / (1.0 - grid.nodes[k] * grid.nodes[k]);
  q[n - 1] = 0.5 * F[n - 1];

  const Eigen::VectorXd w1 = grid.antideriv * q;
  const Eigen::VectorXd w2 = grid.nodes.cwiseProduct(q) - w1f;
  if (!w1.allFinite() || !w2.allFinite())
    throw std::runtime_error("resolvent_at_mu: quadrature failure near rho = 1");

  return {red.apply_K(w1), red.apply_K(w2)};
}

namespace {

// One inverse-iteration pass at a slightly shifted eigenvalue; sharpens the
// eigenvector of this strongly non-normal matrix by several digits.
Eigen::VectorXd polish_eigenvector(const Eigen::MatrixXd& A, double lambda,
                                   const Eigen::VectorXd& v0) {
  Eigen::MatrixXd shifted = A;
  shifted.diagonal().array() -= lambda + 1e-9;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
  Eigen::VectorXd v = v0 / v0.norm();
  for (int it = 0; it < 2; ++it) {
    v = lu.solve(v);
    v /= v.norm();
  }
  return v;
}

}  // namespace

ProjectionData spectral_projection(const GeneratorMatrix& gen) {
  if (!gen.with_perturbation)
    throw std::invalid_argument("spectral_projection: assemble the full generator first");
  const Eigen::EigenSolver<Eigen::MatrixXd> right(gen.matrix);
  if (right.info() != Eigen::Success)
    throw std::runtime_error("spectral_projection: eigensolver failed");

  int idx = -1;
  double best = 1e300;
  for (int i = 0; i < right.eigenvalues().size(); ++i) {
    const double dist = std::abs(right.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
    if (dist < best) {
      best = dist;
      idx = i;
    }
  }
  if (best > 1e-4)
    throw std::runtime_error("spectral_projection: no eigenvalue within 1e-4 of 1");

  const double lambda0 = right.eigenvalues()[idx].real();
  Eigen::VectorXd r = polish_eigenvector(gen.matrix, lambda0, right.eigenvectors().col(idx).real());
  Eigen::VectorXd l = polish_eigenvector(gen.matrix.transpose(), lambda0, r);

  ProjectionData proj;
  proj.lambda = l.dot(gen.matrix * r) / l.dot(r);  // Rayleigh-quotient refinement
  r /= r[gen.grid->N - 1];                         // phi_1 block is ~constant; pin it to 1
  proj.normalization = l.dot(r);
  if (proj.normalization == 0.0)
    throw std::runtime_error("spectral_projection: degenerate left/right pairing");
  proj.left_mode = l / proj.normalization;
  proj.right_reduced = r;
  proj.right_mode = gen.reconstruct(r);
  return proj;
}

EvolutionTrace linear_propagate(const GeneratorMatrix& gen, const ProjectionData& proj,
                                const StatePair& state0, double tau_end, double dt,
                                int sample_target, double overflow_guard) {
  const Grid& grid = *gen.grid;
  const Reduction red(grid, gen.params.d);
  const int steps = static_cast<int>(std::ceil(tau_end / dt));
  const int stride = std::max(1, steps / std::max(1, sample_target));

  EvolutionTrace trace;
  trace.meta = {gen.params.d, gen.params.p, gen.params.epsilon, grid.N, dt, 0.0, 0.0, "linear"};

  Eigen::VectorXd x = gen.reduce(state0);
  const Eigen::MatrixXd& A = gen.matrix;
  Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());

  auto record = [&](double tau) {
    const StatePair s = gen.reconstruct(x);
    const double full = red.pair_sobolev_norm(s);
    const double coeff = proj.coefficient(x);
    const StatePair stab = gen.reconstruct(proj.remove(x));
    trace.taus.push_back(tau);
    trace.full_norm.push_back(full);
    trace.stable_norm.push_back(red.pair_sobolev_norm(stab));
    trace.unstable_coeff.push_back(coeff);
    trace.lower_norm.push_back(red.lower_pair_sobolev_norm(s));
    std::vector<double> hj(red.m_d() + 1);
    for (int j = 0; j <= red.m_d(); ++j) hj[j] = red.hj_seminorm(s.first, j);
    trace.hj_norms.push_back(std::move(hj));
    return full;
  };

  record(0.0);
  for (int step = 1; step <= steps; ++step) {
    k1.noalias() = A * x;
    k2.noalias() = A * (x + 0.5 * dt * k1);
    k3.noalias() = A * (x + 0.5 * dt * k2);
    k4.noalias() = A * (x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % stride == 0 || step == steps) {
      const double full = record(step * dt);
      if (!std::isfinite(full) || full > overflow_guard) {
        trace.aborted = true;
        break;
      }
    }
  }
  return trace;
}

double fit_log_slope(const std::vector<double>& taus, const std::vector<double>& values,
                     double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("fit_log_slope: degenerate window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < t0 || taus[i] > t1) continue;
    if (!(values[i] > 0.0)) continue;
    const double x = taus[i];
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 10) throw std::invalid_argument("fit_log_slope: fewer than 10 samples in window");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_log_slope: degenerate window");
  const double slope = (count * sxy - sx * sy) / denom;
  return -slope;
}

double fit_decay_rate(const EvolutionTrace& trace, double t0, double t1) {
  return fit_log_slope(trace.taus, trace.full_norm, t0, t1);
}

double stable_dt(const Grid& grid, double factor) { return factor * grid.min_spacing(); }

}  // namespace ssw
