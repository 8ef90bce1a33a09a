// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "ssw/evolve.hpp"
#include "ssw/grid.hpp"
#include "ssw/model.hpp"

using namespace ssw;

TEST_CASE("make_params examples") {
  SUBCASE("d=5, p=3") {
    const ModelParams m = make_params(5, 3.0, 0.05);
    CHECK(m.c_p == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.s_p == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(m.m_d == 3);
    CHECK(m.diss_bound == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(m.spectral_threshold == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(m.superconformal);  // threshold (5+3)/(5-1) = 2 < 3
  }
  SUBCASE("d=7, p=5 has mu_p = 0.45") {
    const ModelParams m = make_params(7, 5.0, 0.05);
    CHECK(m.mu_p == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(m.spectral_threshold == doctest::Approx(-0.5).epsilon(1e-14));
  }
  SUBCASE("d=5, p=2.5 is superconformal") {
    const ModelParams m = make_params(5, 2.5, 0.05);
    CHECK(m.superconformal);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(make_params(4, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(5, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(make_params(5, 3.0, 1.5), std::invalid_argument);   // >= min{1, 1}
    CHECK_THROWS_AS(make_params(5, 3.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_params(5, 1.5), std::invalid_argument);        // subconformal
    CHECK_NOTHROW(make_params(5, 1.5, 0.05, /*allow_subconformal=*/true));
  }
}

TEST_CASE("c_p balances the ODE") {
  for (double p : {2.2, 3.0, 5.0, 7.0}) {
    const ModelParams m = make_params(7, p, 0.02);
    const double lhs = std::pow(std::abs(m.c_p), p - 1.0) * m.c_p;
    const double rhs = (2.0 / (p - 1.0)) * ((p + 1.0) / (p - 1.0)) * m.c_p;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("ode_profile") {
  const ModelParams m = make_params(5, 3.0);
  CHECK(ode_profile(m, 1.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // (T-t) = e^{-1} gives c_p * e for p = 3
  CHECK(ode_profile(m, 1.0, 1.0 - std::exp(-1.0)) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(1.0)).epsilon(1e-13));
  CHECK_THROWS_AS(ode_profile(m, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("static pair is an equilibrium of the similarity system") {
  const ModelParams m = make_params(5, 3.0);
  const Grid grid = build_grid(32);
  const StatePair rhs = similarity_rhs(m, grid, static_pair(m, grid));
  CHECK(rhs.first.cwiseAbs().maxCoeff() < 1e-11);
  CHECK(rhs.second.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("symmetry mode values") {
  const Grid grid = build_grid(16);
  SUBCASE("p=3 gives (1,2)") {
    const StatePair g = symmetry_mode(make_params(5, 3.0), grid);
    CHECK(g.first[3] == 1.0);
    CHECK(g.second[7] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("p=5 gives (1,1.5)") {
    const StatePair g = symmetry_mode(make_params(7, 5.0), grid);
    CHECK(g.second[0] == doctest::Approx(1.5).epsilon(1e-15));
  }
}

TEST_CASE("initial data operator") {
  const ModelParams m = make_params(5, 3.0);
  const Grid grid = build_grid(32);
  const double T0 = 1.0;

  SUBCASE("kappa(T0) equals the static pair") {
    const Eigen::Vector2d k = kappa(T0, T0, m);
    CHECK(k[0] == doctest::Approx(m.c_p).epsilon(1e-15));
    CHECK(k[1] == doctest::Approx(m.two_over_pm1() * m.c_p).epsilon(1e-15));
  }

  SUBCASE("v = 0, T = T0 gives the zero pair") {
    const SampledProfile v = zero_profile(1.3);
    const StatePair u = initial_data_U(v, T0, T0, m, grid);
    CHECK(u.first.cwiseAbs().maxCoeff() == 0.0);
    CHECK(u.second.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("d kappa / dT at T0 is alpha g with alpha = 2 c_p / ((p-1) T0)") {
    const double h = 1e-6;
    const Eigen::Vector2d dk = (kappa(T0 + h, T0, m) - kappa(T0 - h, T0, m)) / (2.0 * h);
    const double alpha = 2.0 * m.c_p / ((m.p - 1.0) * T0);
    CHECK(dk[0] == doctest::Approx(alpha).epsilon(1e-8));
    CHECK(dk[1] / dk[0] == doctest::Approx(m.pp1_over_pm1()).epsilon(1e-8));
  }

  SUBCASE("exact family data evaluated at its own T gives zero perturbation") {
    const double T_star = T0 + 0.04;
    const SampledProfile v = family_difference_profile(m, T_star, T0, 1.3);
    const StatePair u = initial_data_U(v, T_star, T0, m, grid);
    CHECK(u.first.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(u.second.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("U is affine in v: U(v+w,T) - U(w,T) = V(v,T)") {
    const SampledProfile v = gaussian_profile(0.3, 0.7, 1.3);
    const SampledProfile w = gaussian_profile(-0.2, 0.4, 1.3);
    const SampledProfile vw =
        make_profile(v.radii, v.values1 + w.values1, v.values2 + w.values2);
    const double T = 1.07;
    const StatePair lhs = initial_data_U(vw, T, T0, m, grid) - initial_data_U(w, T, T0, m, grid);
    const StatePair rhs = scaled_data_V(v, T, m, grid);
    CHECK((lhs.first - rhs.first).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((lhs.second - rhs.second).cwiseAbs().maxCoeff() < 1e-13);
  }

  SUBCASE("profile must cover radius T") {
    const SampledProfile v = zero_profile(0.9);
    CHECK_THROWS_AS(initial_data_U(v, 1.0, T0, m, grid), std::invalid_argument);
  }
}
