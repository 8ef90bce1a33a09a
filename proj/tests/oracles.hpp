// SPDX-License-Identifier: Apache-2.0
//
// Test-only symbolic machinery, independent of the library implementation:
// operators are expanded as sums c * rho^a * u^{(n)} by direct application of
// their definitions, and evaluated against analytic test functions.

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

// A differential expression sum_i c_i rho^{a_i} d^{n_i}/drho^{n_i}.
using Term = std::pair<int, int>;  // (rho power, derivative order)
using Expr = std::map<Term, double>;

inline void add_term(Expr& e, int power, int order, double coeff) {
  if (coeff == 0.0) return;
  e[{power, order}] += coeff;
  if (e[{power, order}] == 0.0) e.erase({power, order});
}

// rho^{-1} d/drho applied to the expression.
inline Expr raise_rho_inv_d(const Expr& e) {
  Expr out;
  for (const auto& [term, c] : e) {
    const auto [a, n] = term;
    add_term(out, a - 2, n, c * a);   // derivative hits rho^a
    add_term(out, a - 1, n + 1, c);   // derivative passes to u
  }
  return out;
}

// Direct expansion of D_d = (rho^{-1} d/drho)^{(d-3)/2} (rho^{d-2} .).
inline Expr expand_Dd(int d) {
  Expr e;
  add_term(e, d - 2, 0, 1.0);
  for (int k = 0; k < (d - 3) / 2; ++k) e = raise_rho_inv_d(e);
  return e;
}

// Smooth analytic test function with exact derivatives of every order:
// polynomial in rho^2 with supplied coefficients.
struct EvenPoly {
  std::vector<double> coeffs;  // u = sum_j coeffs[j] rho^{2j}

  double derivative(int order, double rho) const {
    double acc = 0.0;
    for (size_t j = 0; j < coeffs.size(); ++j) {
      const int e = 2 * static_cast<int>(j);
      if (e < order) continue;
      double fall = 1.0;
      for (int k = 0; k < order; ++k) fall *= (e - k);
      acc += coeffs[j] * fall * std::pow(rho, e - order);
    }
    return acc;
  }
  double operator()(double rho) const { return derivative(0, rho); }
};

inline double eval_expr(const Expr& e, const EvenPoly& u, double rho) {
  double acc = 0.0;
  for (const auto& [term, c] : e) {
    const auto [a, n] = term;
    acc += c * std::pow(rho, a) * u.derivative(n, rho);
  }
  return acc;
}

}  // namespace oracle
