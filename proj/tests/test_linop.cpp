// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "ssw/corpus.hpp"
#include "ssw/grid.hpp"
#include "ssw/linop.hpp"
#include "ssw/model.hpp"
#include "ssw/reduction.hpp"
#include "ssw/verify.hpp"

using namespace ssw;
using doctest::Approx;

TEST_CASE("generator fixes the symmetry mode") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(64);
  CHECK(checks::symmetry_mode_residual(params, grid) < 1e-8);
}

TEST_CASE("free generator matches the hand-coded field on a simple pair") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(32);
  const GeneratorMatrix gen = assemble_generator(params, grid, false);
  // u = (rho^2, rho^4): L0 u has closed-form rows
  StatePair u{grid.nodes.array().pow(2), grid.nodes.array().pow(4)};
  const StatePair lu = gen.apply(u);
  for (int k = 0; k < grid.size(); ++k) {
    const double rho = grid.nodes[k];
    const double row1 = std::pow(rho, 4) - 2.0 * rho * rho - 1.0 * rho * rho;
    const double row2 = (2.0 + 2.0 * (params.d - 1.0)) - 4.0 * std::pow(rho, 4) -
                        2.0 * std::pow(rho, 4);
    CHECK(std::abs(lu.first[k] - row1) < 1e-9);
    CHECK(std::abs(lu.second[k] - row2) < 1e-9);
  }
  SUBCASE("zero maps to zero") {
    const StatePair lz = gen.apply(StatePair::zero(grid.size()));
    CHECK(lz.first.cwiseAbs().maxCoeff() == 0.0);
    CHECK(lz.second.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("dissipativity estimate") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(64);
  const Reduction red(grid, 5);
  const GeneratorMatrix gen0 = assemble_generator(params, grid, false);

  SUBCASE("zero state gives zero") {
    CHECK(dissipativity_residual(gen0, red, StatePair::zero(grid.size())) == 0.0);
  }
  SUBCASE("corpus residuals are nonpositive up to tolerance") {
    CHECK(checks::dissipativity_max_relative(params, grid, 42, 200) <= 1e-8);
  }
  SUBCASE("inner-product route equals the explicit identity terms") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const StatePair u = random_even_pair(rng, grid, 6);
      const double via_inner = dissipativity_residual(gen0, red, u);
      const double via_identity = dissipativity_expected_residual(red, u);
      const double scale = std::max(red.d_inner(u, u), std::abs(via_identity));
      CHECK(std::abs(via_inner - via_identity) / scale < 1e-6);
    }
  }
  SUBCASE("saturated for states with vanishing interior terms") {
    // u = (const, 0): D u_1 = a_0 c rho, so w1'' = 0 and w2' = 0
    StatePair u{Eigen::VectorXd::Constant(grid.size(), 0.7),
                Eigen::VectorXd::Zero(grid.size())};
    CHECK(std::abs(dissipativity_residual(gen0, red, u)) < 1e-7);
  }
  SUBCASE("also holds at (7,5)") {
    const ModelParams p75 = make_params(7, 5.0);
    CHECK(checks::dissipativity_max_relative(p75, grid, 42, 100) <= 1e-8);
  }
}

TEST_CASE("explicit resolvent at mu = 1 - 2/(p-1)") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(64);

  SUBCASE("f = 0 gives u = 0") {
    const StatePair u = resolvent_at_mu(params, grid, StatePair::zero(grid.size()));
    CHECK(u.first.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(u.second.cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("residual over random smooth pairs") {
    CHECK(checks::resolvent_max_relative(params, grid, 42, 20) <= 1e-6);
  }
  SUBCASE("reduced solution components vanish at the origin") {
    Rng rng(9);
    const Reduction red(grid, 5);
    const StatePair f = random_even_pair(rng, grid, 6);
    const StatePair u = resolvent_at_mu(params, grid, f);
    CHECK(std::abs(red.apply_D(u.first)[0]) < 1e-10);
    CHECK(std::abs(red.apply_D(u.second)[0]) < 1e-10);
  }
}

TEST_CASE("spectral projection") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(48);
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  const ProjectionData proj = spectral_projection(gen);
  const Eigen::VectorXd g = symmetry_mode(params, grid).stacked();

  SUBCASE("eigenvalue sits at 1") { CHECK(std::abs(proj.lambda - 1.0) < 1e-9); }
  SUBCASE("P g = g") {
    CHECK((proj.apply(g) - g).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("P is idempotent on random vectors") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x(2 * grid.size());
      for (int i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);
      const Eigen::VectorXd px = proj.apply(x);
      CHECK((proj.apply(px) - px).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, px.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("P annihilates stable eigenvectors") {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(gen.matrix);
    int idx = -1;
    double best = 1e300;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
      const auto lam = solver.eigenvalues()[i];
      if (std::abs(lam.imag()) > 1e-8) continue;
      const double dist = std::abs(lam - std::complex<double>(-1.0, 0.0));
      if (dist < best) {
        best = dist;
        idx = i;
      }
    }
    REQUIRE(best < 1e-6);  // the lambda = -1 family member is resolved exactly
    const Eigen::VectorXd v = solver.eigenvectors().col(idx).real();
    CHECK(std::abs(proj.coefficient(v)) < 1e-8 * v.cwiseAbs().maxCoeff());
  }
  SUBCASE("P annihilates the analytic lambda = -1 eigenfunction") {
    // u1 = K_d w with w the terminating branch; u2 from the first equation
    const Reduction red(grid, 5);
    // w = rho 2F1(-1, 3/2; 3/2; rho^2) = rho (1 - rho^2)
    const Eigen::VectorXd w =
        grid.nodes.array() * (1.0 - grid.nodes.array().square());
    const Eigen::VectorXd u1 = red.apply_K(w);
    const Eigen::VectorXd u2 = -1.0 * u1 + grid.nodes.cwiseProduct(grid.derivative(u1)) + u1;
    const StatePair u{u1, u2};
    const StatePair lu = gen.apply(u);
    CHECK((lu.first + u.first).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((lu.second + u.second).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(proj.coefficient(gen.reduce(u))) < 1e-8);
  }
  SUBCASE("requires the full generator") {
    const GeneratorMatrix gen0 = assemble_generator(params, grid, false);
    CHECK_THROWS(spectral_projection(gen0));
  }
}

TEST_CASE("linear propagation") {
  const ModelParams params = make_params(5, 3.0);
  const Grid grid = build_grid(48);
  const GeneratorMatrix gen = assemble_generator(params, grid, true);
  const ProjectionData proj = spectral_projection(gen);
  const double dt = stable_dt(grid, 0.5);

  SUBCASE("symmetry mode grows like e^tau") {
    const EvolutionTrace tr = linear_propagate(gen, proj, symmetry_mode(params, grid), 2.0, dt);
    const double last_tau = tr.taus.back();
    CHECK(tr.unstable_coeff.back() ==
          Approx(std::exp(last_tau)).epsilon(1e-6));
  }
  SUBCASE("zero data stays zero") {
    const EvolutionTrace tr =
        linear_propagate(gen, proj, StatePair::zero(grid.size()), 1.0, dt);
    for (double x : tr.full_norm) CHECK(x == 0.0);
  }
  SUBCASE("projection-filtered data decays at least at mu_p") {
    Rng rng(8);
    StatePair s = random_even_pair(rng, grid, 5);
    const StatePair s0 = StatePair::from_stacked(proj.remove(s.stacked()));
    const EvolutionTrace tr = linear_propagate(gen, proj, s0, 8.0, dt);
    const double rate = fit_decay_rate(tr, 3.0, 7.5);
    CHECK(rate >= params.mu_p - 0.1);
  }
  SUBCASE("halving dt leaves the trace unchanged to RK4 accuracy") {
    Rng rng(2);
    const StatePair s0 = random_even_pair(rng, grid, 4);
    const EvolutionTrace a = linear_propagate(gen, proj, s0, 1.0, dt);
    const EvolutionTrace b = linear_propagate(gen, proj, s0, 1.0, 0.5 * dt);
    CHECK(a.full_norm.back() == Approx(b.full_norm.back()).epsilon(1e-8));
  }
}

TEST_CASE("discrete eigenvalue near 1 is at roundoff for every resolution") {
  // the symmetry mode is a polynomial pair, so the eigenvalue is exact up to
  // solver noise at any N
  const ModelParams params = make_params(5, 3.0);
  const Grid g32 = build_grid(32);
  const Grid g64 = build_grid(64);
  const ProjectionData p32 = spectral_projection(assemble_generator(params, g32, true));
  const ProjectionData p64 = spectral_projection(assemble_generator(params, g64, true));
  CHECK(std::abs(p32.lambda - 1.0) < 1e-9);
  CHECK(std::abs(p64.lambda - 1.0) < 1e-9);
}

TEST_CASE("fit_decay_rate") {
  EvolutionTrace tr;
  SUBCASE("exact exponential") {
    for (int i = 0; i <= 100; ++i) {
      const double tau = 0.1 * i;
      tr.taus.push_back(tau);
      tr.full_norm.push_back(std::exp(-0.7 * tau));
    }
    CHECK(fit_decay_rate(tr, 0.0, 10.0) == Approx(0.7).epsilon(1e-10));
  }
  SUBCASE("constant trace gives zero") {
    for (int i = 0; i <= 50; ++i) {
      tr.taus.push_back(0.2 * i);
      tr.full_norm.push_back(2.5);
    }
    CHECK(fit_decay_rate(tr, 0.0, 10.0) == Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("modulated exponential over a late window") {
    for (int i = 0; i <= 600; ++i) {
      const double tau = 0.025 * i;
      tr.taus.push_back(tau);
      tr.full_norm.push_back(std::exp(-tau) * (2.0 + std::sin(tau)));
    }
    CHECK(fit_decay_rate(tr, 5.0, 15.0) == Approx(1.0).epsilon(0.05));
  }
  SUBCASE("degenerate windows rejected") {
    tr.taus = {0.0, 1.0};
    tr.full_norm = {1.0, 0.5};
    CHECK_THROWS_AS(fit_decay_rate(tr, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay_rate(tr, 1.0, 1.0), std::invalid_argument);
  }
}
