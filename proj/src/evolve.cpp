// SPDX-License-Identifier: Apache-2.0

#include "ssw/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "ssw/corpus.hpp"

namespace ssw {

double nonlinearity_scalar(const ModelParams& params, double x) {
  const double c = params.c_p;
  if (params.p == 3.0) return x * x * x + 3.0 * c * x * x;
  const double s = c + x;
  const double n_cx = std::abs(s) == 0.0 ? 0.0 : std::pow(std::abs(s), params.p - 1.0) * s;
  return n_cx - std::pow(c, params.p) - params.p * std::pow(c, params.p - 1.0) * x;
}

Eigen::VectorXd nonlinearity_N(const ModelParams& params, const Eigen::VectorXd& phi1) {
  Eigen::VectorXd out(phi1.size());
  for (int k = 0; k < phi1.size(); ++k) out[k] = nonlinearity_scalar(params, phi1[k]);
  return out;
}

StatePair similarity_rhs(const ModelParams& params, const Grid& grid, const StatePair& psi) {
  const Eigen::MatrixXd lap = radial_laplacian(params, grid);
  const Eigen::VectorXd psi1p = grid.diff1 * psi.first;
  const Eigen::VectorXd psi2p = grid.diff1 * psi.second;
  StatePair rhs = StatePair::zero(grid.size());
  rhs.first = psi.second - grid.nodes.cwiseProduct(psi1p) - params.two_over_pm1() * psi.first;
  rhs.second = lap * psi.first - grid.nodes.cwiseProduct(psi2p) -
               params.pp1_over_pm1() * psi.second;
  for (int k = 0; k < grid.size(); ++k) {
    const double x = psi.first[k];
    rhs.second[k] += std::pow(std::abs(x), params.p - 1.0) * x;
  }
  return rhs;
}

namespace {

struct Recorder {
  const GeneratorMatrix* gen;
  const Reduction* red;
  const ProjectionData* proj;
  EvolutionTrace* trace;

  double operator()(double tau, const Eigen::VectorXd& x) const {
    const StatePair s = gen->reconstruct(x);
    const double full = red->pair_sobolev_norm(s);
    const double coeff = proj->coefficient(x);
    const StatePair stab = gen->reconstruct(proj->remove(x));
    trace->taus.push_back(tau);
    trace->full_norm.push_back(full);
    trace->stable_norm.push_back(red->pair_sobolev_norm(stab));
    trace->unstable_coeff.push_back(coeff);
    trace->lower_norm.push_back(red->lower_pair_sobolev_norm(s));
    std::vector<double> hj(red->m_d() + 1);
    for (int j = 0; j <= red->m_d(); ++j) hj[j] = red->hj_seminorm(s.first, j);
    trace->hj_norms.push_back(std::move(hj));
    return full;
  }
};

}  // namespace

EvolutionTrace run_evolution(const ModelParams& params, const Grid& grid,
                             const GeneratorMatrix& gen, const ProjectionData& proj,
                             const Reduction& red, const SampledProfile& v, double T, double T0,
                             double tau_end, const EvolveOptions& options) {
  if (!(options.dt_factor > 0.0)) throw std::invalid_argument("run_evolution: bad dt factor");
  const double dt = stable_dt(grid, options.dt_factor);
  const int steps = static_cast<int>(std::ceil(tau_end / dt));
  const int stride = std::max(1, steps / std::max(1, options.sample_target));
  const int nred = grid.N;

  EvolutionTrace trace;
  trace.meta = {params.d, params.p, params.epsilon, grid.N, dt, T, T0, "nonlinear"};
  Recorder record{&gen, &red, &proj, &trace};

  Eigen::VectorXd x = gen.reduce(initial_data_U(v, T, T0, params, grid));
  const Eigen::MatrixXd& A = gen.matrix;
  auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd r = A * y;
    // the nonlinearity acts pointwise on phi_1 at the interior nodes
    r.tail(nred) += nonlinearity_N(params, y.head(nred));
    return r;
  };

  record(0.0, x);
  Eigen::VectorXd k1, k2, k3, k4;
  for (int step = 1; step <= steps; ++step) {
    k1 = rhs(x);
    k2 = rhs(x + 0.5 * dt * k1);
    k3 = rhs(x + 0.5 * dt * k2);
    k4 = rhs(x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % stride == 0 || step == steps) {
      const double full = record(step * dt, x);
      if (!std::isfinite(full) || full > options.overflow_guard) {
        trace.aborted = true;
        break;
      }
    }
  }
  return trace;
}

EvolutionTrace run_evolution(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                             double T, double T0, double tau_end, const EvolveOptions& options) {
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  const ProjectionData proj = spectral_projection(gen);
  const Reduction red(grid, params.d);
  return run_evolution(params, grid, gen, proj, red, v, T, T0, tau_end, options);
}

double profile_pair_norm(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                         double R) {
  if (v.max_radius < R) throw std::invalid_argument("profile_pair_norm: radius not covered");
  const Reduction red(grid, params.d);
  Eigen::VectorXd v1(grid.size()), v2(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    v1[k] = v.interp1(R * grid.nodes[k]);
    v2[k] = v.interp2(R * grid.nodes[k]);
  }
  // || w(R .) ||_{H^m(B_R)}^2 = sum_n R^{d-2n} int rho^{d-1} |nabla^n w~|^2
  auto scaled = [&](const Eigen::VectorXd& w, int m) {
    double acc = 0.0;
    for (int nn = 0; nn <= m; ++nn) {
      const double h = red.hj_seminorm(w, nn);
      acc += std::pow(R, params.d - 2.0 * nn) * h * h;
    }
    return acc;
  };
  return std::sqrt(scaled(v1, params.m_d) + scaled(v2, params.m_d - 1));
}

namespace {

// Late-time unstable coefficient, averaged over the final quarter window to
// damp transients. Aborted traces are read off over whatever range exists:
// by then the unstable mode dominates anyway.
double late_coefficient(const EvolutionTrace& trace, double tau_probe) {
  if (trace.size() == 0) throw std::runtime_error("tune_blowup_time: empty trace");
  const double horizon = std::min(tau_probe, trace.taus.back());
  double acc = 0.0;
  int count = 0;
  for (int i = 0; i < trace.size(); ++i) {
    if (trace.taus[i] < 0.75 * horizon) continue;
    acc += std::exp(-trace.taus[i]) * trace.unstable_coeff[i];
    ++count;
  }
  if (count == 0) throw std::runtime_error("tune_blowup_time: empty probe window");
  return acc / count;
}

}  // namespace

ShootResult tune_blowup_time(const ModelParams& params, const Grid& grid,
                             const GeneratorMatrix& gen, const ProjectionData& proj,
                             const Reduction& red, const SampledProfile& v, double T0,
                             double delta, const ShootOptions& options) {
  if (!(delta > 0.0) || !(T0 > 0.0)) throw std::invalid_argument("tune_blowup_time: bad bracket");
  if (options.smallness > 0.0) {
    const double vnorm = profile_pair_norm(params, grid, v, std::min(v.max_radius, T0 + delta));
    if (vnorm > options.smallness)
      throw std::invalid_argument("tune_blowup_time: ||v|| exceeds the smallness gate");
  }

  EvolveOptions evo;
  evo.dt_factor = options.dt_factor;
  evo.sample_target = options.sample_target;
  evo.overflow_guard = options.overflow_guard;

  int evaluations = 0;
  auto coeff_at = [&](double T) {
    ++evaluations;
    const EvolutionTrace t =
        run_evolution(params, grid, gen, proj, red, v, T, T0, options.tau_probe, evo);
    return late_coefficient(t, options.tau_probe);
  };

  ShootResult result;
  result.bracket = {T0 - delta, T0 + delta};

  const double t_tol = options.t_tol_rel * T0;
  double T_star = T0;

  // the zero data case short-circuits: the coefficient vanishes identically
  const double c_mid = coeff_at(T0);
  if (std::abs(c_mid) < 1e-13) {
    T_star = T0;
  } else {
    double lo = T0 - delta, hi = T0 + delta;
    double c_lo = coeff_at(lo), c_hi = coeff_at(hi);
    if (c_lo == 0.0) {
      T_star = lo;
    } else if (c_hi == 0.0) {
      T_star = hi;
    } else {
      if (c_lo * c_hi > 0.0)
        throw ShootBracketError("tune_blowup_time: no sign change over the bracket", c_lo, c_hi);
      // seed the bracket with the midpoint evaluation
      if (c_mid * c_lo < 0.0) {
        hi = T0;
        c_hi = c_mid;
      } else {
        lo = T0;
        c_lo = c_mid;
      }
      // bisection narrows, secant polishes
      while (evaluations < options.max_iter && (hi - lo) > 1e-3 * delta) {
        const double mid = 0.5 * (lo + hi);
        const double c = coeff_at(mid);
        if (c == 0.0) {
          lo = hi = mid;
          break;
        }
        if (c * c_lo < 0.0) {
          hi = mid;
          c_hi = c;
        } else {
          lo = mid;
          c_lo = c;
        }
      }
      double x0 = lo, x1 = hi, f0 = c_lo, f1 = c_hi;
      T_star = 0.5 * (lo + hi);
      while (evaluations < options.max_iter) {
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        const double x2c = std::min(std::max(x2, T0 - delta), T0 + delta);
        if (std::abs(x2c - x1) < t_tol) {
          T_star = x2c;
          break;
        }
        const double f2 = coeff_at(x2c);
        x0 = x1;
        f0 = f1;
        x1 = x2c;
        f1 = f2;
        T_star = x2c;
        if (f2 == 0.0) break;
      }
      if (evaluations >= options.max_iter && std::abs(x1 - x0) > 16.0 * t_tol)
        throw std::runtime_error("tune_blowup_time: no convergence within max iterations");
    }
  }

  const double tau_final = options.final_tau_end > 0.0 ? options.final_tau_end : options.tau_probe;
  result.T_star = T_star;
  result.iterations = evaluations;
  result.trace = run_evolution(params, grid, gen, proj, red, v, T_star, T0, tau_final, evo);
  result.final_unstable_coeff = late_coefficient(result.trace, std::min(options.tau_probe, tau_final));
  result.converged = true;
  return result;
}

ShootResult tune_blowup_time(const ModelParams& params, const Grid& grid, const SampledProfile& v,
                             double T0, double delta, const ShootOptions& options) {
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  const ProjectionData proj = spectral_projection(gen);
  const Reduction red(grid, params.d);
  return tune_blowup_time(params, grid, gen, proj, red, v, T0, delta, options);
}

RateReport measure_convergence_rates(const ModelParams& params, const ShootResult& shoot,
                                     RateMode mode) {
  const EvolutionTrace& trace = shoot.trace;
  if (trace.size() < 12) throw std::invalid_argument("measure_convergence_rates: trace too short");
  const double tau_max = trace.taus.back();
  const double t0 = std::min(2.0, 0.25 * tau_max);
  const double t1 = 0.95 * tau_max;
  if (!(t1 > t0)) throw std::invalid_argument("measure_convergence_rates: no decay window");

  RateReport report;
  report.mode = mode;
  report.expected = mode == RateMode::full ? params.mu_p : 0.5 - params.epsilon;

  auto add_entry = [&](const std::string& label, const std::vector<double>& series) {
    RateEntry e;
    e.label = label;
    e.window = {t0, t1};
    double peak = 0.0;
    for (double s : series) peak = std::max(peak, std::abs(s));
    if (peak < 1e-13) {
      e.applicable = false;
      e.fitted = 0.0;
      e.passed = true;  // nothing to decay
    } else {
      e.fitted = fit_log_slope(trace.taus, series, t0, t1);
      e.passed = e.fitted >= report.expected - 0.1;
    }
    report.per_norm.push_back(e);
  };

  const int jmax = mode == RateMode::full ? params.m_d : params.m_d - 1;
  for (int j = 0; j <= jmax; ++j) {
    std::vector<double> series(trace.size());
    for (int i = 0; i < trace.size(); ++i) series[i] = trace.hj_norms[i][j];
    add_entry("Hdot" + std::to_string(j), series);
  }
  add_entry(mode == RateMode::full ? "pair_norm" : "lower_pair_norm",
            mode == RateMode::full ? trace.full_norm : trace.lower_norm);
  return report;
}

namespace {

Eigen::VectorXd radius_nodes(double radius, int samples) {
  Eigen::VectorXd r(samples);
  constexpr double kPi = 3.14159265358979323846;
  for (int k = 0; k < samples; ++k)
    r[k] = 0.5 * radius * (1.0 - std::cos(kPi * k / (samples - 1)));
  r[0] = 0.0;
  r[samples - 1] = radius;
  return r;
}

}  // namespace

SampledProfile zero_profile(double radius, int samples) {
  const Eigen::VectorXd r = radius_nodes(radius, samples);
  return make_profile(r, Eigen::VectorXd::Zero(samples), Eigen::VectorXd::Zero(samples));
}

SampledProfile family_difference_profile(const ModelParams& params, double T_star, double T0,
                                         double radius, int samples) {
  const Eigen::VectorXd r = radius_nodes(radius, samples);
  const SampledProfile a = family_profile(params, T_star, r);
  const SampledProfile b = family_profile(params, T0, r);
  return make_profile(r, a.values1 - b.values1, a.values2 - b.values2);
}

SampledProfile gaussian_profile(double amplitude, double width, double radius, int samples) {
  const Eigen::VectorXd r = radius_nodes(radius, samples);
  Eigen::VectorXd v1(samples), v2(samples);
  for (int k = 0; k < samples; ++k) {
    const double g = amplitude * std::exp(-(r[k] * r[k]) / (width * width));
    v1[k] = g;
    v2[k] = 0.5 * g;
  }
  return make_profile(r, v1, v2);
}

SampledProfile random_even_perturbation(const ModelParams& params, const Grid& grid,
                                        std::uint64_t seed, double target_norm, double radius,
                                        int samples) {
  Rng rng(seed);
  const TestProfile shape1 = random_even_profile(rng, 4);
  const TestProfile shape2 = random_even_profile(rng, 4);
  const Eigen::VectorXd r = radius_nodes(radius, samples);
  Eigen::VectorXd v1(samples), v2(samples);
  for (int k = 0; k < samples; ++k) {
    const double x = r[k] / radius;
    v1[k] = shape1.eval(x);
    v2[k] = shape2.eval(x);
  }
  SampledProfile prof = make_profile(r, v1, v2);
  const double norm = profile_pair_norm(params, grid, prof, radius);
  if (norm > 0.0) {
    const double scale = target_norm / norm;
    prof.values1 *= scale;
    prof.values2 *= scale;
  }
  return prof;
}

}  // namespace ssw
