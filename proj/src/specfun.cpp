// SPDX-License-Identifier: Apache-2.0

#include "ssw/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssw {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr int kMaxTerms = 500;
constexpr double kSeriesTol = 1e-16;

// Classic Lanczos coefficients for g = 7.
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

Complex lanczos_positive_half(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

Complex gamma_lanczos(Complex z) {
  if (is_nonpositive_integer(z)) return Complex(std::numeric_limits<double>::infinity(), 0.0);
  if (z.real() < 0.5) {
    return kPi / (std::sin(kPi * z) * lanczos_positive_half(1.0 - z));
  }
  return lanczos_positive_half(z);
}

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return Complex(0.0, 0.0);
  if (z.real() < 0.5) return std::sin(kPi * z) * lanczos_positive_half(1.0 - z) / kPi;
  return 1.0 / lanczos_positive_half(z);
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z))
    return Complex(std::numeric_limits<double>::infinity(), 0.0);
  Complex acc(0.0, 0.0);
  if (z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    acc -= kPi * std::cos(kPi * z) / std::sin(kPi * z);
    z = 1.0 - z;
  }
  while (std::abs(z) < 8.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  // asymptotic series, Bernoulli terms through B_14
  static const double coef[7] = {1.0 / 12.0,  -1.0 / 120.0,    1.0 / 252.0, -1.0 / 240.0,
                                 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  Complex series(0.0, 0.0);
  Complex power = inv2;
  for (double c : coef) {
    series += c * power;
    power *= inv2;
  }
  return acc + std::log(z) - 0.5 * inv - series;
}

namespace {

// Plain Gauss series; valid for |z| < 1 and any z when it terminates.
Complex gauss_series(Complex a, Complex b, Complex c, double z) {
  Complex term(1.0, 0.0);
  Complex sum(1.0, 0.0);
  for (int k = 0; k < kMaxTerms; ++k) {
    const Complex ck = c + static_cast<double>(k);
    if (ck == Complex(0.0, 0.0))
      throw std::invalid_argument("hyp2f1: series hits a pole of c");
    term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
            (ck * static_cast<double>(k + 1)) * z;
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1: series did not converge");
}

// AMS 15.3.6: c-a-b not an integer, 1/2 < z < 1.
Complex connection_generic(Complex a, Complex b, Complex c, double z) {
  const Complex s = c - a - b;
  const double w = 1.0 - z;
  const Complex t1 = gamma_lanczos(c) * gamma_lanczos(s) * reciprocal_gamma(c - a) *
                     reciprocal_gamma(c - b) * gauss_series(a, b, 1.0 - s, w);
  const Complex t2 = gamma_lanczos(c) * gamma_lanczos(-s) * reciprocal_gamma(a) *
                     reciprocal_gamma(b) * std::pow(Complex(w, 0.0), s) *
                     gauss_series(c - a, c - b, 1.0 + s, w);
  return t1 + t2;
}

// AMS 15.3.10 / 15.3.11: c = a + b + m with integer m >= 0, 1/2 < z < 1.
Complex connection_log(Complex a, Complex b, int m, double z) {
  const Complex c = a + b + static_cast<double>(m);
  const double w = 1.0 - z;
  const double lw = std::log(w);
  Complex finite(0.0, 0.0);
  if (m > 0) {
    // sum_{n=0}^{m-1} (a)_n (b)_n / (n! (1-m)_n) w^n
    Complex term(1.0, 0.0);
    finite = term;
    for (int n = 0; n + 1 <= m - 1; ++n) {
      term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
              (static_cast<double>(n + 1) * (1.0 - m + static_cast<double>(n))) * w;
      finite += term;
    }
    finite *= gamma_lanczos(static_cast<double>(m)) * gamma_lanczos(c) *
              reciprocal_gamma(a + static_cast<double>(m)) *
              reciprocal_gamma(b + static_cast<double>(m));
  }

  // logarithmic series; pref carries (a+m)_n (b+m)_n / (n! (n+m)!) w^n
  Complex series(0.0, 0.0);
  double nmfact = 1.0;
  for (int k = 1; k <= m; ++k) nmfact *= k;
  Complex pref = Complex(1.0 / nmfact, 0.0);
  for (int n = 0; n < kMaxTerms; ++n) {
    const Complex bracket = lw - digamma(static_cast<double>(n + 1)) -
                            digamma(static_cast<double>(n + m + 1)) +
                            digamma(a + static_cast<double>(n + m)) +
                            digamma(b + static_cast<double>(n + m));
    const Complex term = pref * bracket;
    series += term;
    if (n > 2 && std::abs(term) <= kSeriesTol * std::abs(series)) break;
    pref *= (a + static_cast<double>(m + n)) * (b + static_cast<double>(m + n)) * w /
            (static_cast<double>(n + 1) * static_cast<double>(n + m + 1));
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const Complex logpart = -sign * gamma_lanczos(c) * reciprocal_gamma(a) * reciprocal_gamma(b) *
                          std::pow(w, m) * series;
  return finite + logpart;
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
  if (z == 0.0) return Complex(1.0, 0.0);
  const bool a_terminates = is_nonpositive_integer(a);
  const bool b_terminates = is_nonpositive_integer(b);
  if (is_nonpositive_integer(c)) {
    // polynomial may still terminate before the series hits the pole of c
    const double cr = std::round(c.real());
    const bool ok = (a_terminates && std::round(a.real()) > cr - 1.0) ||
                    (b_terminates && std::round(b.real()) > cr - 1.0);
    if (!ok) throw std::invalid_argument("hyp2f1: c is a nonpositive integer");
  }
  if (a_terminates || b_terminates) {
    if (z > 1.0) throw std::invalid_argument("hyp2f1: z above 1");
    return gauss_series(a, b, c, z);  // terminating; any z <= 1
  }
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("hyp2f1: z must lie in [0,1)");
  if (z <= 0.5) return gauss_series(a, b, c, z);

  const Complex s = c - a - b;
  const double sr = std::round(s.real());
  if (std::abs(s.imag()) < 1e-13 && std::abs(s.real() - sr) < 1e-13) {
    const int m = static_cast<int>(sr);
    if (m >= 0) return connection_log(a, b, m, z);
    // Euler transformation flips the sign of m
    return std::pow(Complex(1.0 - z, 0.0), s) * connection_log(c - a, c - b, -m, z);
  }
  return connection_generic(a, b, c, z);
}

}  // namespace ssw
