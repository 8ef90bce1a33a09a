// SPDX-License-Identifier: Apache-2.0

#include "ssw/verify.hpp"

#include <cmath>

#include "ssw/corpus.hpp"
#include "ssw/evolve.hpp"
#include "ssw/linop.hpp"
#include "ssw/reduction.hpp"
#include "ssw/spectrum.hpp"

namespace ssw {
namespace checks {

namespace {

Eigen::VectorXd dilation(const Grid& grid, const Eigen::VectorXd& u) {
  return -grid.nodes.cwiseProduct(grid.derivative(u));  // Lambda u = -rho u'
}

}  // namespace

double d_lambda_commutator(const Grid& grid, int d, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, d);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd u = random_even_polynomial(rng, 5).sample(grid);
    const Eigen::VectorXd lhs = red.apply_D(dilation(grid, u));
    const Eigen::VectorXd du = red.apply_D(u);
    const Eigen::VectorXd rhs = dilation(grid, du) + du;
    worst = std::max(worst, grid.l2_norm(lhs - rhs));
  }
  return worst;
}

double d_laplacian_commutator(const Grid& grid, int d, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, d);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd u = random_even_polynomial(rng, 5).sample(grid);
    const Eigen::VectorXd lhs = red.apply_D(red.apply_laplacian(u));
    const Eigen::VectorXd rhs = grid.derivative(red.apply_D(u), 2);
    worst = std::max(worst, grid.l2_norm(lhs - rhs));
  }
  return worst;
}

double kd_inverse(const Grid& grid, int d, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, d);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd u = random_even_polynomial(rng, 5).sample(grid);
    worst = std::max(worst, grid.l2_norm(red.apply_K(red.apply_D(u)) - u));
  }
  return worst;
}

double k_lambda_commutator(const Grid& grid, int d, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, d);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd w = random_even_polynomial(rng, 5).sample_odd(grid);
    const Eigen::VectorXd lhs = red.apply_K(dilation(grid, w));
    const Eigen::VectorXd kw = red.apply_K(w);
    const Eigen::VectorXd rhs = dilation(grid, kw) - kw;
    worst = std::max(worst, grid.l2_norm(lhs - rhs));
  }
  return worst;
}

double k_laplacian_commutator(const Grid& grid, int d, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, d);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd w = random_even_polynomial(rng, 5).sample_odd(grid);
    const Eigen::VectorXd lhs = red.apply_K(grid.derivative(w, 2));
    const Eigen::VectorXd rhs = red.apply_laplacian(red.apply_K(w));
    worst = std::max(worst, grid.l2_norm(lhs - rhs));
  }
  return worst;
}

double symmetry_mode_residual(const ModelParams& params, const Grid& grid) {
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  const StatePair g = symmetry_mode(params, grid);
  const StatePair rp = gen.apply(g) - g;
  return std::sqrt(std::pow(grid.l2_norm(rp.first), 2) + std::pow(grid.l2_norm(rp.second), 2));
}

double dissipativity_max_relative(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                  int count) {
  Rng rng(seed);
  const GeneratorMatrix gen0 = assemble_generator(params, grid, false);
  const Reduction red(grid, params.d);
  double worst = -1e300;
  for (int i = 0; i < count; ++i) {
    const StatePair u = random_even_pair(rng, grid, 8);
    const double dn2 = red.d_inner(u, u);
    if (dn2 <= 0.0) continue;
    worst = std::max(worst, dissipativity_residual(gen0, red, u) / dn2);
  }
  return worst;
}

double resolvent_max_relative(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                              int count) {
  Rng rng(seed);
  const GeneratorMatrix gen0 = assemble_generator(params, grid, false);
  const double mu = 1.0 - params.two_over_pm1();
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const StatePair f = random_even_pair(rng, grid, 6);
    const StatePair u = resolvent_at_mu(params, grid, f);
    const StatePair rp = (u * mu) - gen0.apply(u) - f;
    const double rnorm =
        std::sqrt(std::pow(grid.l2_norm(rp.first), 2) + std::pow(grid.l2_norm(rp.second), 2));
    const double fnorm =
        std::sqrt(std::pow(grid.l2_norm(f.first), 2) + std::pow(grid.l2_norm(f.second), 2));
    if (fnorm > 0.0) worst = std::max(worst, rnorm / fnorm);
  }
  return worst;
}

namespace {

RatioStats ratio_stats(const ModelParams& params, const Grid& grid, std::uint64_t seed, int count,
                       int which) {
  Rng rng(seed);
  const Reduction red(grid, params.d);
  RatioStats st{1e300, 0.0};
  for (int i = 0; i < count; ++i) {
    const StatePair u = random_even_pair(rng, grid, 8);
    double num = 0.0, den = 0.0;
    switch (which) {
      case 0:
        num = red.d_norm(u);
        den = red.pair_sobolev_norm(u);
        break;
      case 1: {
        const double s1 = red.sigma1_norm(u.first);
        const double s2 = red.sigma2_norm(u.second);
        num = std::sqrt(s1 * s1 + s2 * s2);
        den = red.pair_sobolev_norm(u);
        break;
      }
      default:
        num = red.lower_d_norm(u);
        den = red.lower_pair_sobolev_norm(u);
        break;
    }
    if (den <= 0.0) continue;
    const double r = num / den;
    st.min_ratio = std::min(st.min_ratio, r);
    st.max_ratio = std::max(st.max_ratio, r);
  }
  return st;
}

}  // namespace

RatioStats norm_equivalence_ratios(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                   int count) {
  return ratio_stats(params, grid, seed, count, 0);
}

RatioStats sigma_equivalence_ratios(const ModelParams& params, const Grid& grid,
                                    std::uint64_t seed, int count) {
  return ratio_stats(params, grid, seed, count, 1);
}

RatioStats lower_equivalence_ratios(const ModelParams& params, const Grid& grid,
                                    std::uint64_t seed, int count) {
  return ratio_stats(params, grid, seed, count, 2);
}

double hardy_max_ratio(const Grid& grid, int alpha, std::uint64_t seed, int count) {
  Rng rng(seed);
  const Reduction red(grid, 5);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    // f = rho^alpha * (random polynomial), so f^{(j)}(0) = 0 for j < alpha
    const Eigen::VectorXd q = random_even_polynomial(rng, 6).sample(grid);
    const Eigen::VectorXd f = grid.nodes.array().pow(alpha) * q.array();
    if (grid.l2_norm(f) < 1e-12) continue;
    worst = std::max(worst, red.hardy_ratio(alpha, f));
  }
  return worst;
}

ExtensionStats extension_bounds(const ModelParams& params, const Grid& grid, std::uint64_t seed,
                                int count) {
  Rng rng(seed);
  const Reduction red(grid, params.d);
  ExtensionStats st{0.0, 1e300, 0.0};
  const int m = params.m_d;
  const Grid outer = build_grid(64);
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd u = random_even_profile(rng, 6).sample(grid);
    const ExtendedProfile ext = extend_profile(params, m, grid, u);
    const double full = extension_radial_norm(params, ext, m);
    const double sigma = red.sigma1_norm(u);
    const double inner = red.sobolev_norm(u, m);
    if (sigma > 0.0) st.max_constant = std::max(st.max_constant, full / sigma);
    if (full > 0.0) st.min_constant = std::min(st.min_constant, inner / full);
    // derivative continuity across the seam: left from the grid, right from
    // a segment on [1, 5/4] where the cutoff is identically 1
    Eigen::VectorXd vals(outer.size());
    for (int k = 0; k < outer.size(); ++k) vals[k] = ext(1.0 + 0.25 * outer.nodes[k]);
    Eigen::VectorXd right = vals;
    Eigen::VectorXd left = u;
    double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    for (int k = 0; k <= m; ++k) {
      const double lv = left(grid.N);
      const double rv = right(0);
      st.seam_error = std::max(st.seam_error, std::abs(lv - rv) / scale);
      if (k < m) {
        left = grid.derivative(left);
        right = 4.0 * outer.derivative(right);  // d/drho = 4 d/ds on [1,5/4]
      }
    }
  }
  return st;
}

LipschitzScaling lipschitz_scaling(const ModelParams& params, const Grid& grid,
                                   std::uint64_t seed, int shapes, int amplitudes) {
  Rng rng(seed);
  const Reduction red(grid, params.d);
  std::vector<double> xs, ys;
  for (int s = 0; s < shapes; ++s) {
    Eigen::VectorXd phi = random_even_profile(rng, 6).sample(grid);
    Eigen::VectorXd psi = random_even_profile(rng, 6).sample(grid);
    phi /= red.sobolev_norm(phi, params.m_d);
    psi /= red.sobolev_norm(psi, params.m_d);
    for (int a = 0; a < amplitudes; ++a) {
      const double amp = 1e-3 * std::pow(50.0, a / std::max(1.0, amplitudes - 1.0));
      const Eigen::VectorXd u = amp * phi;
      const Eigen::VectorXd v = 0.7 * amp * psi;
      const Eigen::VectorXd dn = nonlinearity_N(params, u) - nonlinearity_N(params, v);
      const double q = red.sobolev_norm(dn, params.m_d - 1) / red.sobolev_norm(u - v, params.m_d);
      xs.push_back(red.sobolev_norm(u, params.m_d) + red.sobolev_norm(v, params.m_d));
      ys.push_back(q);
    }
  }
  // ordinary least squares with intercept
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  LipschitzScaling out;
  out.samples = n;
  const double denom = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ymean = sy / n;
  for (int i = 0; i < n; ++i) {
    const double fit = out.intercept + out.slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
  }
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

}  // namespace checks

std::vector<CheckResult> verify_suite(int d, double p, double epsilon, int N, std::uint64_t seed) {
  const ModelParams params = make_params(d, p, epsilon);
  const Grid grid = build_grid(N);
  std::vector<CheckResult> out;
  auto push = [&out](const std::string& name, double measured, double threshold, bool pass) {
    out.push_back({name, measured, threshold, pass});
  };
  auto push_max = [&push](const std::string& name, double measured, double threshold) {
    push(name, measured, threshold, measured <= threshold);
  };

  const int count = 100;
  push_max("D/Lambda commutator", checks::d_lambda_commutator(grid, d, seed, count), 1e-8);
  push_max("D/Laplacian commutator", checks::d_laplacian_commutator(grid, d, seed, count), 1e-8);
  push_max("K o D inverse", checks::kd_inverse(grid, d, seed, count), 1e-8);
  push_max("K/Lambda commutator", checks::k_lambda_commutator(grid, d, seed, count), 1e-8);
  push_max("K/Laplacian commutator", checks::k_laplacian_commutator(grid, d, seed, count), 1e-8);
  push_max("symmetry mode (1-L)g", checks::symmetry_mode_residual(params, grid), 1e-8);
  push_max("dissipativity residual", checks::dissipativity_max_relative(params, grid, seed, 200),
           1e-8);
  push_max("resolvent residual", checks::resolvent_max_relative(params, grid, seed, 20), 1e-6);

  const auto dr = checks::norm_equivalence_ratios(params, grid, seed, 200);
  push("norm equivalence (D vs Sobolev)", dr.max_ratio / dr.min_ratio, 1e3,
       std::isfinite(dr.max_ratio / dr.min_ratio) && dr.min_ratio > 0.0);
  const auto sr = checks::sigma_equivalence_ratios(params, grid, seed, 200);
  push("norm equivalence (Sigma vs Sobolev)", sr.max_ratio / sr.min_ratio, 1e3,
       std::isfinite(sr.max_ratio / sr.min_ratio) && sr.min_ratio > 0.0);

  double hardy_worst = 0.0;
  for (int alpha = 1; alpha <= 3; ++alpha)
    hardy_worst = std::max(hardy_worst, checks::hardy_max_ratio(grid, alpha, seed, 50));
  push_max("Hardy ratio", hardy_worst, 10.0);

  const auto ext = checks::extension_bounds(params, grid, seed, 20);
  push("extension bound", ext.max_constant, 1e3,
       std::isfinite(ext.max_constant) && ext.min_constant <= 1.0 + 1e-9);
  push_max("extension seam continuity", ext.seam_error, 1e-5);

  const auto lip = checks::lipschitz_scaling(params, grid, seed, 12, 8);
  push("nonlinearity Lipschitz R^2", lip.r_squared, 0.95, lip.r_squared >= 0.95);
  return out;
}

}  // namespace ssw
