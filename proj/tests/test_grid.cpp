// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ssw/corpus.hpp"
#include "ssw/grid.hpp"
#include "ssw/model.hpp"
#include "ssw/reduction.hpp"

using namespace ssw;

TEST_CASE("nodes at N=4 match the closed form") {
  // (1 - cos(pi k/4))/2; a degenerate N below the build_grid floor, so
  // compute directly
  for (int k = 0; k <= 4; ++k) {
    const double expected[] = {0.0, 0.14644660940672624, 0.5, 0.8535533905932737, 1.0};
    const double rho = 0.5 * (1.0 - std::cos(M_PI * k / 4.0));
    CHECK(rho == doctest::Approx(expected[k]).epsilon(1e-14));
  }
}

TEST_CASE("build_grid rejects tiny N") { CHECK_THROWS_AS(build_grid(4), std::invalid_argument); }

TEST_CASE("differentiation is exact on polynomials") {
  const Grid g = build_grid(16);
  SUBCASE("rho^2 -> 2 rho") {
    Eigen::VectorXd u = g.nodes.cwiseProduct(g.nodes);
    Eigen::VectorXd du = g.diff1 * u;
    for (int k = 0; k <= g.N; ++k) CHECK(du[k] == doctest::Approx(2.0 * g.nodes[k]).epsilon(1e-12));
  }
  SUBCASE("degrees up to min(N,10), first and second derivative") {
    for (int deg = 0; deg <= 10; ++deg) {
      Eigen::VectorXd u = g.nodes.array().pow(deg);
      Eigen::VectorXd du = g.diff1 * u;
      Eigen::VectorXd d2u = g.diff2 * u;
      for (int k = 0; k <= g.N; ++k) {
        const double rho = g.nodes[k];
        const double expect1 = deg == 0 ? 0.0 : deg * std::pow(rho, deg - 1);
        const double expect2 = deg <= 1 ? 0.0 : deg * (deg - 1.0) * std::pow(rho, deg - 2);
        CHECK(du[k] == doctest::Approx(expect1).epsilon(1e-10));
        CHECK(d2u[k] - expect2 == doctest::Approx(0.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("diff1 annihilates constants and maps nodes to ones") {
  const Grid g = build_grid(64);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.size());
  CHECK((g.diff1 * ones).cwiseAbs().maxCoeff() < 2e-12);
  CHECK(((g.diff1 * g.nodes) - ones).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quadrature: positive weights summing to one, exact on polynomials") {
  const Grid g = build_grid(16);
  CHECK(g.quad_weights.minCoeff() > 0.0);
  CHECK(g.quad_weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  for (int deg = 0; deg <= 10; ++deg) {
    const Eigen::VectorXd u = g.nodes.array().pow(deg);
    CHECK(g.integrate(u) == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-12));
  }
  SUBCASE("rho^{d-1} with d = 5 integrates to 1/5") {
    const Eigen::VectorXd u = g.nodes.array().pow(4);
    CHECK(g.integrate(u) == doctest::Approx(0.2).epsilon(1e-13));
  }
}

TEST_CASE("antiderivative matrix integrates polynomials exactly") {
  const Grid g = build_grid(24);
  for (int deg = 0; deg <= 10; ++deg) {
    const Eigen::VectorXd u = g.nodes.array().pow(deg);
    const Eigen::VectorXd F = g.antideriv * u;
    for (int k = 0; k <= g.N; ++k)
      CHECK(F[k] == doctest::Approx(std::pow(g.nodes[k], deg + 1) / (deg + 1)).epsilon(1e-12));
  }
}

TEST_CASE("barycentric interpolation") {
  SUBCASE("node input returns the node value exactly") {
    const Grid g = build_grid(12);
    Eigen::VectorXd u(g.size());
    for (int k = 0; k < g.size(); ++k) u[k] = std::sin(3.0 * g.nodes[k]);
    for (int k = 0; k < g.size(); ++k) CHECK(interpolate(g, u, g.nodes[k]) == u[k]);
  }
  SUBCASE("rho^3 at N=16, x=0.3") {
    const Grid g = build_grid(16);
    const Eigen::VectorXd u = g.nodes.array().pow(3);
    CHECK(interpolate(g, u, 0.3) == doctest::Approx(0.027).epsilon(1e-12));
  }
  SUBCASE("exp at N=32, x=0.7") {
    const Grid g = build_grid(32);
    Eigen::VectorXd u(g.size());
    for (int k = 0; k < g.size(); ++k) u[k] = std::exp(g.nodes[k]);
    CHECK(interpolate(g, u, 0.7) == doctest::Approx(std::exp(0.7)).epsilon(1e-10));
  }
  SUBCASE("out of range rejected") {
    const Grid g = build_grid(8);
    const Eigen::VectorXd u = Eigen::VectorXd::Zero(g.size());
    CHECK_THROWS_AS(interpolate(g, u, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(interpolate(g, u, -0.1), std::invalid_argument);
  }
}

TEST_CASE("profile ingest") {
  SUBCASE("two rows") {
    std::istringstream in("0,1,0\n1,0.5,0\n");
    const SampledProfile p = ingest_profile(in);
    CHECK(p.size() == 2);
    CHECK(p.max_radius == 1.0);
    CHECK(p.values1[1] == 0.5);
  }
  SUBCASE("optional header accepted") {
    std::istringstream in("r,u,ut\n0,1,0\n1,0.5,0\n");
    CHECK(ingest_profile(in).size() == 2);
  }
  SUBCASE("decreasing radii rejected") {
    std::istringstream in("1,0.5,0\n0,1,0\n");
    CHECK_THROWS_AS(ingest_profile(in), ProfileMonotonicityError);
  }
  SUBCASE("empty file rejected") {
    std::istringstream in("");
    CHECK_THROWS_AS(ingest_profile(in), ProfileEmptyError);
  }
  SUBCASE("parse failure rejected") {
    std::istringstream in("0,1,zebra\n");
    CHECK_THROWS_AS(ingest_profile(in), ProfileParseError);
  }
  SUBCASE("write-then-read round-trips bit-identically") {
    Eigen::VectorXd r(3), u(3), ut(3);
    r << 0.0, 0.3333333333333333, 1.0;
    u << 1.4142135623730951, -0.123456789012345678, 0.5;
    ut << 0.0, 1e-17, -2.5e108;
    const SampledProfile p = make_profile(r, u, ut);
    std::ostringstream first;
    write_profile(first, p);
    std::istringstream back(first.str());
    const SampledProfile q = ingest_profile(back);
    std::ostringstream second;
    write_profile(second, q);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("norms of a fixed smooth profile are stable under N -> 2N") {
  const ModelParams params = make_params(5, 3.0);
  TestProfile prof;
  prof.even_coeffs = {0.3, -0.2, 0.05};
  prof.gauss_amp = 0.4;
  prof.gauss_decay = 2.0;
  const Grid g1 = build_grid(64);
  const Grid g2 = build_grid(128);
  const StatePair s1{prof.sample(g1), 0.5 * prof.sample(g1)};
  const StatePair s2{prof.sample(g2), 0.5 * prof.sample(g2)};
  const NormReport r1 = norm_suite(params, g1, s1);
  const NormReport r2 = norm_suite(params, g2, s2);
  CHECK(std::abs(r1.sobolev_m - r2.sobolev_m) < 1e-8);
  CHECK(std::abs(r1.sigma - r2.sigma) < 1e-8);
  CHECK(std::abs(r1.d_norm - r2.d_norm) < 1e-8);
  CHECK(std::abs(r1.lower_d_norm - r2.lower_d_norm) < 1e-8);
}
