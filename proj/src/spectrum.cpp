// SPDX-License-Identifier: Apache-2.0

#include "ssw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssw {

HypergeometricParams hyper_params(Complex lambda, const ModelParams& params) {
  const double p = params.p;
  return {0.5 * (lambda - 2.0), 0.5 * (lambda + (p + 3.0) / (p - 1.0)), Complex(0.5, 0.0)};
}

Complex connection_coeff(Complex lambda, const ModelParams& params) {
  const auto [a, b, c] = hyper_params(lambda, params);
  const Complex num1 = a + b + 1.0 - c;  // = lambda + 2/(p-1)
  if (is_nonpositive_integer(num1))
    return Complex(std::numeric_limits<double>::infinity(), 0.0);
  return gamma_lanczos(num1) * gamma_lanczos(1.0 - c) * reciprocal_gamma(a + 1.0 - c) *
         reciprocal_gamma(b + 1.0 - c);
}

Complex newton_polish_root(Complex lambda0, const ModelParams& params, int max_iter, double tol) {
  Complex lambda = lambda0;
  const double h = 1e-6;
  for (int it = 0; it < max_iter; ++it) {
    const Complex f = connection_coeff(lambda, params);
    if (!std::isfinite(std::abs(f))) {
      lambda += Complex(10.0 * h, 0.0);  // stepped onto a numerator pole
      continue;
    }
    const Complex fp = connection_coeff(lambda + h, params);
    const Complex fm = connection_coeff(lambda - h, params);
    const Complex deriv = (fp - fm) / (2.0 * h);
    if (deriv == Complex(0.0, 0.0)) break;
    const Complex step = f / deriv;
    lambda -= step;
    if (std::abs(step) < tol) break;
  }
  return lambda;
}

std::vector<double> analytic_family_one(int count) {
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) v[k] = 1.0 - 2.0 * k;
  return v;
}

std::vector<double> analytic_family_two(const ModelParams& params, int count) {
  const double p = params.p;
  const double head = -2.0 * p / (p - 1.0) - 2.0 / (p - 1.0);
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) v[k] = -2.0 * k + head;
  return v;
}

SpectrumReport analytic_spectrum(const ModelParams& params, int count) {
  SpectrumReport rep;
  rep.threshold = params.spectral_threshold;
  for (double lam : analytic_family_one(count)) {
    if (lam > rep.threshold)
      rep.analytic_unstable.emplace_back(lam, 0.0);
    else
      rep.analytic_stable_heads.emplace_back(lam, 0.0);
  }
  for (double lam : analytic_family_two(params, count)) rep.analytic_stable_heads.emplace_back(lam, 0.0);
  std::sort(rep.analytic_stable_heads.begin(), rep.analytic_stable_heads.end(),
            [](auto x, auto y) { return x.real() > y.real(); });
  return rep;
}

Eigen::VectorXcd eigenfunction_profile(Complex lambda, const ModelParams& params,
                                       const Grid& grid) {
  double dist = std::numeric_limits<double>::infinity();
  for (double lam : analytic_family_one(64)) dist = std::min(dist, std::abs(lambda - lam));
  for (double lam : analytic_family_two(params, 64)) dist = std::min(dist, std::abs(lambda - lam));
  if (dist > 1e-8) throw std::invalid_argument("eigenfunction_profile: lambda is not a root");

  const auto [a, b, c] = hyper_params(lambda, params);
  Eigen::VectorXcd w(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double rho = grid.nodes[k];
    w[k] = rho * hyp2f1(a + 1.0 - c, b + 1.0 - c, 2.0 - c, rho * rho);
  }
  return w;
}

double eigenfunction_ode_residual(Complex lambda, const ModelParams& params, const Grid& grid) {
  const Eigen::VectorXcd w = eigenfunction_profile(lambda, params, grid);
  Eigen::VectorXcd wp(grid.size()), wpp(grid.size());
  {
    const Eigen::VectorXd re_p = grid.derivative(w.real());
    const Eigen::VectorXd im_p = grid.derivative(w.imag());
    wp.real() = re_p;
    wp.imag() = im_p;
    wpp.real() = grid.derivative(re_p);
    wpp.imag() = grid.derivative(im_p);
  }
  const Complex shift = lambda + params.two_over_pm1();
  Eigen::VectorXcd res(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double rho = grid.nodes[k];
    res[k] = -(1.0 - rho * rho) * wpp[k] + 2.0 * rho * shift * wp[k] +
             (shift - 1.0) * shift * w[k] - params.linearized_coeff() * w[k];
  }
  double rnorm = 0.0, wnorm = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    rnorm += grid.quad_weights[k] * std::norm(res[k]);
    wnorm += grid.quad_weights[k] * std::norm(w[k]);
  }
  return std::sqrt(rnorm) / std::sqrt(wnorm);
}

namespace {

std::vector<std::complex<double>> dense_eigenvalues(const ModelParams& params, int N) {
  const Grid grid = build_grid(N);
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(gen.matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("matrix_spectrum: eigensolver failed");
  std::vector<std::complex<double>> eigs(solver.eigenvalues().size());
  for (int i = 0; i < solver.eigenvalues().size(); ++i) eigs[i] = solver.eigenvalues()[i];
  return eigs;
}

double nearest_distance(const std::vector<std::complex<double>>& set, std::complex<double> z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : set) best = std::min(best, std::abs(s - z));
  return best;
}

}  // namespace

SpectrumReport matrix_spectrum(const ModelParams& params, const std::vector<int>& resolutions,
                               double persist_tol) {
  if (resolutions.size() < 2)
    throw std::invalid_argument("matrix_spectrum: need at least two resolutions");
  SpectrumReport rep = analytic_spectrum(params, 64);
  rep.resolutions = resolutions;

  std::vector<std::vector<std::complex<double>>> spectra;
  spectra.reserve(resolutions.size());
  for (int N : resolutions) spectra.push_back(dense_eigenvalues(params, N));

  const auto& coarse = spectra[spectra.size() - 2];
  const auto& fine = spectra.back();
  rep.matrix_eigs = fine;

  const auto fam1 = analytic_family_one(64);
  const auto fam2 = analytic_family_two(params, 64);

  rep.records.reserve(fine.size());
  for (const auto& z : fine) {
    EigenvalueRecord rec;
    rec.value = z;
    rec.drift = nearest_distance(coarse, z);
    rec.persistent = rec.drift <= persist_tol;
    double best = std::numeric_limits<double>::infinity();
    for (double lam : fam1) {
      const double dd = std::abs(z - std::complex<double>(lam, 0.0));
      if (dd < best) {
        best = dd;
        rec.matched_family = 1;
        rec.matched_value = lam;
      }
    }
    for (double lam : fam2) {
      const double dd = std::abs(z - std::complex<double>(lam, 0.0));
      if (dd < best) {
        best = dd;
        rec.matched_family = 2;
        rec.matched_value = lam;
      }
    }
    rec.match_distance = best;
    rep.records.push_back(rec);
  }
  return rep;
}

}  // namespace ssw
