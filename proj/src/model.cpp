// SPDX-License-Identifier: Apache-2.0

#include "ssw/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ssw {

Eigen::VectorXd StatePair::stacked() const {
  Eigen::VectorXd v(first.size() + second.size());
  v << first, second;
  return v;
}

StatePair StatePair::from_stacked(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size()) / 2;
  return {v.head(n), v.tail(n)};
}

StatePair StatePair::zero(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

ModelParams make_params(int d, double p, double epsilon, bool allow_subconformal) {
  if (d < 5 || d % 2 == 0) throw std::invalid_argument("make_params: d must be odd and >= 5");
  if (!(p > 1.0)) throw std::invalid_argument("make_params: p must exceed 1");
  const double rate_cap = std::min(2.0 / (p - 1.0), 1.0);
  if (!(epsilon > 0.0) || epsilon >= rate_cap)
    throw std::invalid_argument("make_params: epsilon must lie in (0, min{2/(p-1),1})");

  ModelParams m;
  m.d = d;
  m.p = p;
  m.epsilon = epsilon;
  m.c_p = std::pow(2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0)), 1.0 / (p - 1.0));
  m.s_p = d / 2.0 - 2.0 / (p - 1.0);
  m.m_d = (d + 1) / 2;
  m.mu_p = rate_cap - epsilon;
  m.diss_bound = -2.0 / (p - 1.0);
  m.spectral_threshold = std::max(-2.0 / (p - 1.0), -1.0);
  m.superconformal = p > static_cast<double>(d + 3) / (d - 1);
  if (!m.superconformal && p != 3.0 && !allow_subconformal)
    throw std::invalid_argument("make_params: p is not superconformal (set allow_subconformal)");
  return m;
}

double ode_profile(const ModelParams& params, double T, double t) {
  if (!(t < T)) throw std::invalid_argument("ode_profile: t must be below T");
  return params.c_p * std::pow(T - t, -2.0 / (params.p - 1.0));
}

StatePair static_pair(const ModelParams& params, const Grid& grid) {
  const int n = grid.size();
  return {Eigen::VectorXd::Constant(n, params.c_p),
          Eigen::VectorXd::Constant(n, params.two_over_pm1() * params.c_p)};
}

StatePair symmetry_mode(const ModelParams& params, const Grid& grid) {
  const int n = grid.size();
  return {Eigen::VectorXd::Ones(n), Eigen::VectorXd::Constant(n, params.pp1_over_pm1())};
}

StatePair scaled_data_V(const SampledProfile& v, double T, const ModelParams& params,
                        const Grid& grid) {
  if (v.max_radius < T)
    throw std::invalid_argument("scaled_data_V: profile does not cover radius T");
  const int n = grid.size();
  const double a1 = std::pow(T, params.two_over_pm1());
  const double a2 = std::pow(T, params.pp1_over_pm1());
  StatePair out = StatePair::zero(n);
  for (int k = 0; k < n; ++k) {
    const double r = T * grid.nodes[k];
    out.first[k] = a1 * v.interp1(r);
    out.second[k] = a2 * v.interp2(r);
  }
  return out;
}

Eigen::Vector2d kappa(double T, double T0, const ModelParams& params) {
  const double s = T / T0;
  return {std::pow(s, params.two_over_pm1()) * params.c_p,
          std::pow(s, params.pp1_over_pm1()) * params.two_over_pm1() * params.c_p};
}

StatePair initial_data_U(const SampledProfile& v, double T, double T0, const ModelParams& params,
                         const Grid& grid) {
  StatePair out = scaled_data_V(v, T, params, grid);
  const Eigen::Vector2d shift = kappa(T, T0, params) - kappa(T0, T0, params);
  out.first.array() += shift[0];
  out.second.array() += shift[1];
  return out;
}

SampledProfile family_profile(const ModelParams& params, double T, const Eigen::VectorXd& radii) {
  const double u0 = ode_profile(params, T, 0.0);
  const double u1 = params.two_over_pm1() * params.c_p * std::pow(T, -params.pp1_over_pm1());
  const int n = static_cast<int>(radii.size());
  return make_profile(radii, Eigen::VectorXd::Constant(n, u0), Eigen::VectorXd::Constant(n, u1));
}

}  // namespace ssw
