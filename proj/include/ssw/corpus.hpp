// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ssw/grid.hpp"
#include "ssw/model.hpp"

namespace ssw {

/// Deterministic random source. Doubles are derived from the raw mt19937_64
/// stream directly, so identical seeds give identical corpora on every
/// platform (std::uniform_real_distribution is implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double unit() {  // uniform in [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  int uniform_int(int a, int b) {  // inclusive bounds
    return a + static_cast<int>(eng_() % static_cast<std::uint64_t>(b - a + 1));
  }

private:
  std::mt19937_64 eng_;
};

/// Smooth even test function on [0,1]: polynomial in rho^2 plus an optional
/// Gaussian in rho^2. Stored analytically so the same corpus member can be
/// sampled on grids of any resolution.
struct TestProfile {
  std::vector<double> even_coeffs;  // u(rho) = sum_j coeffs[j] rho^{2j}
  double gauss_amp = 0.0;
  double gauss_decay = 1.0;  // + amp * exp(-decay * rho^2)

  double eval(double rho) const;
  Eigen::VectorXd sample(const Grid& grid) const;
  Eigen::VectorXd sample_odd(const Grid& grid) const;  // rho * u(rho)
};

/// Random even polynomial of degree <= 2*max_half_degree with decaying
/// coefficients, normalized to O(1) sup norm.
TestProfile random_even_polynomial(Rng& rng, int max_half_degree);

/// Polynomial plus Gaussian bump; the corpus for the norm and operator
/// identity suites.
TestProfile random_even_profile(Rng& rng, int max_half_degree);

StatePair random_even_pair(Rng& rng, const Grid& grid, int max_half_degree);

}  // namespace ssw
