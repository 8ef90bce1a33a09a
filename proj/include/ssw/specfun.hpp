// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace ssw {

using Complex = std::complex<double>;

/// Complex gamma function, Lanczos approximation (g = 7, 9 coefficients) with
/// the reflection formula for Re z < 1/2. Relative accuracy ~1e-13.
Complex gamma_lanczos(Complex z);

/// Entire reciprocal 1/Gamma(z); exactly zero at the poles of Gamma.
Complex reciprocal_gamma(Complex z);

/// Complex digamma via the asymptotic series with recurrence and reflection.
Complex digamma(Complex z);

/// Gauss hypergeometric 2F1(a,b;c;z) for complex parameters and real
/// z in [0,1). The series is used for z <= 1/2 and the z -> 1-z linear
/// transformation otherwise, including the logarithmic branch when c-a-b is
/// an integer. Terminating (polynomial) cases are accepted for any z <= 1.
Complex hyp2f1(Complex a, Complex b, Complex c, double z);

/// True if z is within tol of a nonpositive integer.
bool is_nonpositive_integer(Complex z, double tol = 1e-13);

}  // namespace ssw
