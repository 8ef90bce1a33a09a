// SPDX-License-Identifier: Apache-2.0

#include "ssw/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace ssw {

DCoefficients d_coefficients(int d) {
  if (d < 5 || d % 2 == 0) throw std::invalid_argument("d_coefficients: d must be odd and >= 5");
  std::vector<double> a = {3.0, 1.0};  // D_5 u = 3 rho u + rho^2 u'
  for (int dd = 5; dd < d; dd += 2) {
    const int M = static_cast<int>(a.size());
    // D_d[rho^2 u] = sum_k b_k rho^{k+3} u^{(k)}
    std::vector<double> b(M, 0.0);
    auto at = [&a, M](int k) { return (k >= 0 && k < M) ? a[k] : 0.0; };
    for (int k = 0; k < M; ++k)
      b[k] = at(k) + 2.0 * (k + 1) * at(k + 1) + (k + 2.0) * (k + 1.0) * at(k + 2);
    // rho^{-1} d/drho of the sum
    std::vector<double> next(M + 1, 0.0);
    for (int k = 0; k <= M; ++k) {
      const double bk = (k < M) ? b[k] : 0.0;
      const double bkm1 = (k >= 1) ? b[k - 1] : 0.0;
      next[k] = (k + 3.0) * bk + bkm1;
    }
    a = std::move(next);
  }
  DCoefficients out;
  out.d = d;
  out.coeffs = Eigen::Map<Eigen::VectorXd>(a.data(), static_cast<int>(a.size()));
  return out;
}

std::vector<std::vector<double>> nabla_rad_coefficients(int d, int mmax) {
  std::vector<std::vector<double>> c(mmax);
  c[0] = {1.0};  // nabla_rad^1 = d/drho
  for (int n = 1; n < mmax; ++n) {
    // nabla^{n+1} = d/drho nabla^n (+ (d-1)/rho nabla^n when completing a
    // Laplacian, i.e. when n is odd)
    const double kappa = (n % 2 == 1) ? d - 1.0 : 0.0;
    c[n].assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
      c[n][j - 1] += c[n - 1][j - 1] * (j - n + kappa);
      c[n][j] += c[n - 1][j - 1];
    }
  }
  return c;
}

namespace {

Eigen::MatrixXd rho_d_plus(const Grid& grid, double shift) {
  Eigen::MatrixXd M = grid.nodes.asDiagonal() * grid.diff1;
  M.diagonal().array() += shift;
  return M;
}

}  // namespace

Reduction::Reduction(const Grid& grid, int d)
    : grid_(&grid),
      d_(d),
      m_d_((d + 1) / 2),
      coeffs_(d_coefficients(d)),
      nabla_(nabla_rad_coefficients(d, (d + 1) / 2)),
      div_solver_(rho_d_plus(grid, 1.0)) {
  // K_d = J_{d-3} ... J_4 J_2 applied to w/rho, where J_m inverts
  // rho q' + (m+1) q = h; each factor is exact on polynomials.
  for (int m = 2; m <= d - 3; m += 2) j_solvers_.emplace_back(rho_d_plus(grid, m + 1.0));
}

Eigen::VectorXd Reduction::apply_D(const Eigen::VectorXd& u) const {
  if (u.size() != grid_->size()) throw std::invalid_argument("apply_D: size mismatch");
  Eigen::VectorXd result = Eigen::VectorXd::Zero(u.size());
  Eigen::VectorXd deriv = u;
  Eigen::VectorXd weight = grid_->nodes;  // rho^{n+1}
  for (int n = 0; n < coeffs_.coeffs.size(); ++n) {
    if (n > 0) {
      deriv = grid_->derivative(deriv);
      weight = weight.cwiseProduct(grid_->nodes);
    }
    result += coeffs_.coeffs[n] * weight.cwiseProduct(deriv);
  }
  return result;
}

Eigen::VectorXd Reduction::divide_by_rho(const Eigen::VectorXd& w) const {
  if (w.size() != grid_->size()) throw std::invalid_argument("divide_by_rho: size mismatch");
  return div_solver_.solve(grid_->derivative(w));
}

Eigen::VectorXd Reduction::apply_K(const Eigen::VectorXd& w) const {
  Eigen::VectorXd h = divide_by_rho(w);
  for (const auto& solver : j_solvers_) h = solver.solve(h);
  return h;
}

Eigen::VectorXd Reduction::apply_laplacian(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd up = grid_->derivative(u);
  return grid_->derivative(up) + (d_ - 1.0) * divide_by_rho(up);
}

double Reduction::sigma1_norm(const Eigen::VectorXd& u) const {
  double acc = grid_->quad_weights.dot(u.cwiseAbs2());
  Eigen::VectorXd deriv = u;
  for (int n = 1; n <= m_d_; ++n) {
    deriv = grid_->derivative(deriv);
    Eigen::VectorXd term = grid_->nodes.array().pow(n - 1) * deriv.array();
    acc += grid_->quad_weights.dot(term.cwiseAbs2());
  }
  return std::sqrt(acc);
}

double Reduction::sigma2_norm(const Eigen::VectorXd& u) const {
  double acc = 0.0;
  Eigen::VectorXd deriv = u;
  for (int n = 0; n <= m_d_ - 1; ++n) {
    if (n > 0) deriv = grid_->derivative(deriv);
    Eigen::VectorXd term = grid_->nodes.array().pow(n) * deriv.array();
    acc += grid_->quad_weights.dot(term.cwiseAbs2());
  }
  return std::sqrt(acc);
}

namespace {

// Weighted integrand rho^{(d-1)/2} nabla_rad^n u assembled through the
// expansion coefficients; all rho exponents are nonnegative for n <= m_d.
Eigen::VectorXd weighted_nabla(const Grid& grid, const std::vector<std::vector<double>>& nabla,
                               const std::vector<Eigen::VectorXd>& derivs, int d, int n) {
  const int half = (d - 1) / 2;
  if (n == 0) return grid.nodes.array().pow(half) * derivs[0].array();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(grid.size());
  for (int j = 1; j <= n; ++j) {
    const double cj = nabla[n - 1][j - 1];
    if (cj == 0.0) continue;
    const int pow = j - n + half;
    acc += cj * (grid.nodes.array().pow(pow) * derivs[j].array()).matrix();
  }
  return acc;
}

}  // namespace

double Reduction::sobolev_norm(const Eigen::VectorXd& u, int m) const {
  if (m < 0 || m > m_d_) throw std::invalid_argument("sobolev_norm: order out of range");
  std::vector<Eigen::VectorXd> derivs(m + 1);
  derivs[0] = u;
  for (int j = 1; j <= m; ++j) derivs[j] = grid_->derivative(derivs[j - 1]);
  double acc = 0.0;
  for (int n = 0; n <= m; ++n) {
    Eigen::VectorXd term = weighted_nabla(*grid_, nabla_, derivs, d_, n);
    acc += grid_->quad_weights.dot(term.cwiseAbs2());
  }
  return std::sqrt(acc);
}

double Reduction::hj_seminorm(const Eigen::VectorXd& u, int j) const {
  if (j < 0 || j > m_d_) throw std::invalid_argument("hj_seminorm: order out of range");
  std::vector<Eigen::VectorXd> derivs(j + 1);
  derivs[0] = u;
  for (int k = 1; k <= j; ++k) derivs[k] = grid_->derivative(derivs[k - 1]);
  Eigen::VectorXd term = weighted_nabla(*grid_, nabla_, derivs, d_, j);
  return std::sqrt(grid_->quad_weights.dot(term.cwiseAbs2()));
}

double Reduction::pair_sobolev_norm(const StatePair& u) const {
  const double a = sobolev_norm(u.first, m_d_);
  const double b = sobolev_norm(u.second, m_d_ - 1);
  return std::sqrt(a * a + b * b);
}

double Reduction::lower_pair_sobolev_norm(const StatePair& u) const {
  const double a = sobolev_norm(u.first, m_d_ - 1);
  const double b = sobolev_norm(u.second, m_d_ - 2);
  return std::sqrt(a * a + b * b);
}

double Reduction::d_inner(const StatePair& u, const StatePair& v) const {
  const Eigen::VectorXd wu1 = apply_D(u.first), wu2 = apply_D(u.second);
  const Eigen::VectorXd wv1 = apply_D(v.first), wv2 = apply_D(v.second);
  const Eigen::VectorXd wu1p = grid_->derivative(wu1), wv1p = grid_->derivative(wv1);
  const Eigen::VectorXd wu1pp = grid_->derivative(wu1p), wv1pp = grid_->derivative(wv1p);
  const Eigen::VectorXd wu2p = grid_->derivative(wu2), wv2p = grid_->derivative(wv2);
  const int last = grid_->N;
  const double bu = wu1p(last) + wu2(last);
  const double bv = wv1p(last) + wv2(last);
  return grid_->quad_weights.dot(wu1pp.cwiseProduct(wv1pp)) +
         grid_->quad_weights.dot(wu2p.cwiseProduct(wv2p)) + bu * bv;
}

double Reduction::d_norm(const StatePair& u) const { return std::sqrt(d_inner(u, u)); }

double Reduction::lower_d_norm(const StatePair& u) const {
  const Eigen::VectorXd w1p = grid_->derivative(apply_D(u.first));
  const Eigen::VectorXd w2 = apply_D(u.second);
  return std::sqrt(grid_->quad_weights.dot(w1p.cwiseAbs2()) +
                   grid_->quad_weights.dot(w2.cwiseAbs2()));
}

NormReport Reduction::norm_suite(const StatePair& state) const {
  if (!state.all_finite()) throw std::invalid_argument("norm_suite: non-finite state");
  NormReport r;
  r.sobolev_m = pair_sobolev_norm(state);
  const double s1 = sigma1_norm(state.first);
  const double s2 = sigma2_norm(state.second);
  r.sigma = std::sqrt(s1 * s1 + s2 * s2);
  r.d_norm = d_norm(state);
  r.lower_d_norm = lower_d_norm(state);
  r.lower_sobolev = lower_pair_sobolev_norm(state);
  if (!std::isfinite(r.sobolev_m) || !std::isfinite(r.d_norm))
    throw std::runtime_error("norm_suite: non-finite norm");
  r.ratios = {r.sobolev_m > 0 ? r.d_norm / r.sobolev_m : 0.0,
              r.sobolev_m > 0 ? r.sigma / r.sobolev_m : 0.0};
  return r;
}

double Reduction::hardy_ratio(int alpha, const Eigen::VectorXd& f) const {
  if (alpha < 1) throw std::invalid_argument("hardy_ratio: alpha must be positive");
  const double fnorm = grid_->l2_norm(f);
  if (fnorm == 0.0) return 0.0;
  Eigen::VectorXd num = f;
  for (int k = 0; k < alpha; ++k) num = divide_by_rho(num);
  Eigen::VectorXd den = grid_->derivative(f);
  for (int k = 0; k < alpha - 1; ++k) den = divide_by_rho(den);
  const double dn = grid_->l2_norm(den);
  const double nn = grid_->l2_norm(num);
  if (dn <= 1e-14 * nn)
    throw std::runtime_error("hardy_ratio: derivative norm vanishes while f does not");
  return nn / dn;
}

Eigen::VectorXd apply_D(const DCoefficients& coeffs, const Grid& grid, const Eigen::VectorXd& u) {
  Reduction red(grid, coeffs.d);
  return red.apply_D(u);
}

Eigen::VectorXd apply_K(int d, const Grid& grid, const Eigen::VectorXd& w) {
  Reduction red(grid, d);
  return red.apply_K(w);
}

NormReport norm_suite(const ModelParams& params, const Grid& grid, const StatePair& state) {
  Reduction red(grid, params.d);
  return red.norm_suite(state);
}

double hardy_residual(int alpha, const Grid& grid, const Eigen::VectorXd& f) {
  Reduction red(grid, 5);  // the ratio does not involve d
  return red.hardy_ratio(alpha, f);
}

// --- extension operator ---------------------------------------------------

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Monotone C^m cutoff: 1 on [0,5/4], 0 on [3/2,inf), polynomial smoothstep
// of order m on the transition. Matching the order of the extension keeps
// every downstream quantity polynomial, hence spectrally exact.
double cutoff_m(double rho, int m) {
  if (rho <= 1.25) return 1.0;
  if (rho >= 1.5) return 0.0;
  const double t = (rho - 1.25) / 0.25;
  double s = 0.0;
  for (int n = 0; n <= m; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    s += sign * binomial(m + n, n) * binomial(2 * m + 1, m - n) * std::pow(t, m + n + 1);
  }
  return 1.0 - s;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ExtendedProfile::ExtendedProfile(const Grid& grid, Eigen::VectorXd u, int m)
    : grid_(&grid), u_(std::move(u)), m_(m) {
  if (u_.size() != grid.size()) throw std::invalid_argument("ExtendedProfile: size mismatch");
  du1_.resize(m_ + 1);
  Eigen::VectorXd deriv = u_;
  du1_[0] = deriv(grid.N);
  for (int k = 1; k <= m_; ++k) {
    deriv = grid.derivative(deriv);
    du1_[k] = deriv(grid.N);
  }
}

double ExtendedProfile::h_match(double rho) const {
  // Reflection with boundary-matched Taylor polynomial; the branch parity
  // follows the order m so that all derivatives up to m are continuous at 1.
  const double reflected = interpolate(*grid_, u_, 2.0 - rho);
  double h;
  if (m_ % 2 == 1) {
    h = -reflected;
    for (int n = 0; 2 * n <= m_ - 1; ++n)
      h += 2.0 * std::pow(rho - 1.0, 2 * n) / factorial(2 * n) * du1_[2 * n];
  } else {
    h = reflected;
    for (int n = 1; 2 * n - 1 <= m_ - 1; ++n)
      h += 2.0 * std::pow(rho - 1.0, 2 * n - 1) / factorial(2 * n - 1) * du1_[2 * n - 1];
  }
  return h;
}

double ExtendedProfile::operator()(double rho) const {
  if (rho < 0.0) throw std::invalid_argument("ExtendedProfile: negative radius");
  if (rho <= 1.0) return interpolate(*grid_, u_, rho);
  if (rho >= 1.5) return 0.0;
  return cutoff_m(rho, m_) * h_match(rho);
}

ExtendedProfile extend_profile(const ModelParams& params, int m, const Grid& grid,
                               Eigen::VectorXd u) {
  if (m != params.m_d && m != params.m_d - 1)
    throw std::invalid_argument("extend_profile: order must be m_d or m_d - 1");
  return ExtendedProfile(grid, std::move(u), m);
}

namespace {

// Chebyshev segment on [a,b] for piecewise norms of the extension.
struct Segment {
  Grid unit;
  double scale = 1.0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  Eigen::VectorXd derivative(const Eigen::VectorXd& v) const {
    return unit.derivative(v) / scale;
  }
};

Segment make_segment(int N, double a, double b) {
  Segment s;
  s.unit = build_grid(N);
  s.scale = b - a;
  s.nodes = (a + (b - a) * s.unit.nodes.array()).matrix();
  s.weights = (b - a) * s.unit.quad_weights;
  return s;
}

}  // namespace

double extension_radial_norm(const ModelParams& params, const ExtendedProfile& ext, int m) {
  const int d = params.d;
  const auto nabla = nabla_rad_coefficients(d, std::max(1, m));
  double acc = 0.0;
  // Piecewise segments: the extension is only C^m at rho = 1 and at the
  // cutoff joints 5/4 and 3/2, and polynomial strictly between them.
  const Segment inner = make_segment(96, 0.0, 1.0);
  const Segment plateau = make_segment(96, 1.0, 1.25);
  const Segment falloff = make_segment(96, 1.25, 1.5);
  for (const Segment& seg : {inner, plateau, falloff}) {
    Eigen::VectorXd vals(seg.nodes.size());
    for (int k = 0; k < seg.nodes.size(); ++k) vals[k] = ext(seg.nodes[k]);
    std::vector<Eigen::VectorXd> derivs(m + 1);
    derivs[0] = vals;
    for (int j = 1; j <= m; ++j) derivs[j] = seg.derivative(derivs[j - 1]);
    for (int n = 0; n <= m; ++n) {
      Eigen::VectorXd term;
      if (n == 0) {
        term = seg.nodes.array().pow((d - 1) / 2.0) * vals.array();
      } else {
        term = Eigen::VectorXd::Zero(seg.nodes.size());
        for (int j = 1; j <= n; ++j) {
          const double cj = nabla[n - 1][j - 1];
          if (cj == 0.0) continue;
          term += cj * (seg.nodes.array().pow(j - n + (d - 1) / 2.0) * derivs[j].array()).matrix();
        }
      }
      acc += seg.weights.dot(term.cwiseAbs2());
    }
  }
  return std::sqrt(acc);
}

}  // namespace ssw
