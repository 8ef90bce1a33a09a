// SPDX-License-Identifier: Apache-2.0

#include "ssw/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ssw {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Chebyshev differentiation matrix on x_j = cos(pi j / N), j = 0..N, built
// with the trigonometric form of the node differences and the negative-sum
// trick on the diagonal. Both reduce roundoff noticeably at larger N.
Eigen::MatrixXd cheb_diff_x(int N) {
  const int n = N + 1;
  Eigen::MatrixXd D(n, n);
  auto c = [N](int k) { return (k == 0 || k == N) ? 2.0 : 1.0; };
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      // x_k - x_j = 2 sin((j+k)pi/2N) sin((j-k)pi/2N)
      const double diff =
          2.0 * std::sin((j + k) * kPi / (2.0 * N)) * std::sin((j - k) * kPi / (2.0 * N));
      const double sign = ((k + j) % 2 == 0) ? 1.0 : -1.0;
      D(k, j) = (c(k) / c(j)) * sign / diff;
    }
  }
  for (int k = 0; k < n; ++k) {
    long double s = 0.0L;
    for (int j = 0; j < n; ++j)
      if (j != k) s += D(k, j);
    D(k, k) = static_cast<double>(-s);
  }
  return D;
}

// Clenshaw-Curtis weights for [-1,1] on x_j = cos(pi j / N).
Eigen::VectorXd clencurt_x(int N) {
  Eigen::VectorXd w(N + 1);
  if (N % 2 == 0) {
    w[0] = w[N] = 1.0 / (N * N - 1.0);
    for (int j = 1; j < N; ++j) {
      double v = 1.0;
      for (int k = 1; k <= N / 2 - 1; ++k) v -= 2.0 * std::cos(2.0 * k * j * kPi / N) / (4.0 * k * k - 1.0);
      v -= std::cos(kPi * j) / (N * N - 1.0);
      w[j] = 2.0 * v / N;
    }
  } else {
    w[0] = w[N] = 1.0 / (N * N);
    for (int j = 1; j < N; ++j) {
      double v = 1.0;
      for (int k = 1; k <= (N - 1) / 2; ++k) v -= 2.0 * std::cos(2.0 * k * j * kPi / N) / (4.0 * k * k - 1.0);
      w[j] = 2.0 * v / N;
    }
  }
  return w;
}

// values -> Chebyshev coefficients of f((1-x)/2) on x_j = cos(pi j / N)
Eigen::MatrixXd cheb_analysis(int N) {
  const int n = N + 1;
  auto p = [N](int k) { return (k == 0 || k == N) ? 2.0 : 1.0; };
  Eigen::MatrixXd C(n, n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      C(m, j) = 2.0 / (N * p(m) * p(j)) * std::cos(m * j * kPi / N);
  return C;
}

Eigen::MatrixXd cheb_synthesis(int N) {
  const int n = N + 1;
  Eigen::MatrixXd V(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      V(k, m) = std::cos(m * k * kPi / N);
  return V;
}

// Antiderivative matrix: maps node values f(rho_k) to integral_0^{rho_k} f.
// Built through the Chebyshev coefficient space of the interpolant; exact
// for polynomials of degree <= N-1.
Eigen::MatrixXd antideriv_matrix(int N, const Eigen::MatrixXd& C, const Eigen::MatrixXd& V) {
  const int n = N + 1;
  // integrate the series in x (coefficient b_{N+1} is dropped)
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (int m = 1; m <= N; ++m) {
    S(m, m - 1) += 1.0 / (2.0 * m);
    if (m + 1 <= N) S(m, m + 1) -= 1.0 / (2.0 * m);
  }
  S(1, 0) = 1.0;  // integral of T_0 is T_1
  Eigen::MatrixXd F = V * S * C;  // antiderivative in x, arbitrary constant
  // integral_0^rho f drho' = -(F(x_k) - F(1))/2, and x = 1 is node k = 0
  Eigen::MatrixXd A = -0.5 * (F - Eigen::VectorXd::Ones(n) * F.row(0));
  A.row(0).setZero();
  return A;
}

}  // namespace

Eigen::VectorXd Grid::derivative(const Eigen::VectorXd& v) const {
  Eigen::VectorXd a = to_cheb * v;
  // Rounding noise in the top modes is amplified by ~N^2 per derivative;
  // for grid-resolved functions every coefficient this far below the peak
  // is noise, so gate it before differentiating.
  const double gate = 1e-13 * a.cwiseAbs().maxCoeff();
  for (int k = 0; k <= N; ++k)
    if (std::abs(a[k]) < gate) a[k] = 0.0;
  // coefficient recurrence for d/dx, then d/drho = -2 d/dx
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N + 1);
  if (N >= 1) {
    b[N - 1] = 2.0 * N * a[N];
    for (int k = N - 1; k >= 1; --k) {
      const double next = (k + 2 <= N) ? b[k + 1] : 0.0;
      b[k - 1] = next + 2.0 * k * a[k];
    }
    b[0] *= 0.5;
  }
  return -2.0 * (from_cheb * b);
}

Eigen::VectorXd Grid::derivative(const Eigen::VectorXd& v, int order) const {
  Eigen::VectorXd out = v;
  for (int k = 0; k < order; ++k) out = derivative(out);
  return out;
}

Grid build_grid(int N) {
  if (N < 8) throw std::invalid_argument("build_grid: N must be at least 8");
  Grid g;
  g.N = N;
  const int n = N + 1;
  g.nodes.resize(n);
  for (int k = 0; k < n; ++k) g.nodes[k] = 0.5 * (1.0 - std::cos(kPi * k / N));
  g.nodes[0] = 0.0;
  g.nodes[N] = 1.0;

  // rho = (1-x)/2, so d/drho = -2 d/dx; row/column order matches our nodes.
  Eigen::MatrixXd Dx = cheb_diff_x(N);
  g.diff1 = -2.0 * Dx;
  g.diff2 = g.diff1 * g.diff1;
  // Constants are annihilated analytically; re-center diagonals accordingly.
  for (int k = 0; k < n; ++k) {
    g.diff2(k, k) -= g.diff2.row(k).sum();
  }

  g.quad_weights = 0.5 * clencurt_x(N);
  g.to_cheb = cheb_analysis(N);
  g.from_cheb = cheb_synthesis(N);
  g.antideriv = antideriv_matrix(N, g.to_cheb, g.from_cheb);

  // Closed-form barycentric weights of Chebyshev-Lobatto nodes.
  g.bary_weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == N) w *= 0.5;
    g.bary_weights[k] = w;
  }
  return g;
}

namespace {

double bary_eval(const Eigen::VectorXd& nodes, const Eigen::VectorXd& weights,
                 const Eigen::VectorXd& values, double x) {
  double num = 0.0, den = 0.0;
  for (int k = 0; k < nodes.size(); ++k) {
    const double dx = x - nodes[k];
    if (dx == 0.0) return values[k];
    const double t = weights[k] / dx;
    num += t * values[k];
    den += t;
  }
  return num / den;
}

}  // namespace

double interpolate(const Grid& grid, const Eigen::VectorXd& values, double x) {
  if (values.size() != grid.size()) throw std::invalid_argument("interpolate: size mismatch");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("interpolate: x outside [0,1]");
  return bary_eval(grid.nodes, grid.bary_weights, values, x);
}

SampledProfile make_profile(Eigen::VectorXd radii, Eigen::VectorXd v1, Eigen::VectorXd v2) {
  if (radii.size() != v1.size() || radii.size() != v2.size())
    throw std::invalid_argument("make_profile: column lengths differ");
  if (radii.size() == 0) throw ProfileEmptyError("profile: no samples");
  for (int i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw ProfileMonotonicityError("profile: radii not strictly increasing");
  SampledProfile p;
  p.radii = std::move(radii);
  p.values1 = std::move(v1);
  p.values2 = std::move(v2);
  p.max_radius = p.radii[p.radii.size() - 1];
  return p;
}

const Eigen::VectorXd& SampledProfile::bary_weights() const {
  if (bary_.size() == static_cast<Eigen::Index>(radii.size())) return bary_;
  const int n = size();
  bary_.resize(n);
  // Rescaled product formula; the 4/(b-a) capacity factor keeps the
  // products in range for a few hundred nodes.
  const double scale = 4.0 / (radii[n - 1] - radii[0]);
  for (int k = 0; k < n; ++k) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      w *= (radii[k] - radii[j]) * scale;
    }
    bary_[k] = 1.0 / w;
  }
  return bary_;
}

double SampledProfile::interp(const Eigen::VectorXd& vals, double r) const {
  if (!(r >= radii[0] && r <= max_radius))
    throw std::invalid_argument("profile: evaluation point outside sampled radius");
  return bary_eval(radii, bary_weights(), vals, r);
}

double SampledProfile::interp1(double r) const { return interp(values1, r); }
double SampledProfile::interp2(double r) const { return interp(values2, r); }

SampledProfile ingest_profile(std::istream& in) {
  std::vector<double> r, u, ut;
  std::string line;
  int lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // optional header
    if (!saw_data && line.find_first_not_of("ru t,_") == std::string::npos) continue;
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, cell, ',')) {
        throw ProfileParseError("profile: line " + std::to_string(lineno) + ": expected 3 columns");
      }
      try {
        size_t pos = 0;
        vals[c] = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ProfileParseError("profile: line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    saw_data = true;
    r.push_back(vals[0]);
    u.push_back(vals[1]);
    ut.push_back(vals[2]);
  }
  if (!saw_data) throw ProfileEmptyError("profile: empty input");
  const int n = static_cast<int>(r.size());
  return make_profile(Eigen::Map<Eigen::VectorXd>(r.data(), n),
                      Eigen::Map<Eigen::VectorXd>(u.data(), n),
                      Eigen::Map<Eigen::VectorXd>(ut.data(), n));
}

SampledProfile ingest_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("profile: cannot open " + path);
  return ingest_profile(in);
}

void write_profile(std::ostream& out, const SampledProfile& profile) {
  out << "r,u,ut\n";
  char buf[96];
  for (int i = 0; i < profile.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", profile.radii[i], profile.values1[i],
                  profile.values2[i]);
    out << buf;
  }
}

void write_profile_file(const std::string& path, const SampledProfile& profile) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw ProfileError("profile: cannot write " + path);
  write_profile(out, profile);
}

}  // namespace ssw
