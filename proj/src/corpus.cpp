// SPDX-License-Identifier: Apache-2.0

#include "ssw/corpus.hpp"

#include <cmath>

namespace ssw {

double TestProfile::eval(double rho) const {
  const double z = rho * rho;
  double acc = 0.0;
  for (auto it = even_coeffs.rbegin(); it != even_coeffs.rend(); ++it) acc = acc * z + *it;
  if (gauss_amp != 0.0) acc += gauss_amp * std::exp(-gauss_decay * z);
  return acc;
}

Eigen::VectorXd TestProfile::sample(const Grid& grid) const {
  Eigen::VectorXd v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = eval(grid.nodes[k]);
  return v;
}

Eigen::VectorXd TestProfile::sample_odd(const Grid& grid) const {
  return grid.nodes.cwiseProduct(sample(grid));
}

TestProfile random_even_polynomial(Rng& rng, int max_half_degree) {
  TestProfile p;
  const int half_degree = rng.uniform_int(1, max_half_degree);
  p.even_coeffs.resize(half_degree + 1);
  for (int j = 0; j <= half_degree; ++j) {
    // decaying coefficients keep high derivatives at moderate size
    p.even_coeffs[j] = rng.uniform(-1.0, 1.0) / (1.0 + j * j);
  }
  return p;
}

TestProfile random_even_profile(Rng& rng, int max_half_degree) {
  TestProfile p = random_even_polynomial(rng, max_half_degree);
  if (rng.unit() < 0.5) {
    p.gauss_amp = rng.uniform(-1.0, 1.0);
    p.gauss_decay = rng.uniform(0.5, 6.0);
  }
  return p;
}

StatePair random_even_pair(Rng& rng, const Grid& grid, int max_half_degree) {
  return {random_even_profile(rng, max_half_degree).sample(grid),
          random_even_profile(rng, max_half_degree).sample(grid)};
}

}  // namespace ssw
