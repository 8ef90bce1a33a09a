// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssw/config.hpp"
#include "ssw/io.hpp"

using namespace ssw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config validation produces usage errors") {
  ExperimentConfig cfg;
  cfg.command = "evolve";
  cfg.d = 4;
  CHECK(run_command(cfg) == kExitUsage);
  cfg.d = 5;
  cfg.p = 0.5;
  CHECK(run_command(cfg) == kExitUsage);
  cfg.p = 3.0;
  cfg.command = "explode";
  CHECK(run_command(cfg) == kExitUsage);
  cfg.command = "evolve";
  cfg.mode = "sideways";
  CHECK(run_command(cfg) == kExitUsage);
  cfg.mode = "full";
  cfg.perturb = "family:not-a-number";
  CHECK(run_command(cfg) == kExitUsage);
}

TEST_CASE("evolve command: static configuration stays quiet") {
  TempDir tmp("ssw_cli_evolve");
  ExperimentConfig cfg;
  cfg.command = "evolve";
  cfg.N = 32;
  cfg.tau_end = 4.0;
  cfg.perturb = "none";
  cfg.T_offset = 0.0;
  cfg.out_dir = tmp.path.string();
  CHECK(run_command(cfg) == kExitOk);

  // trace CSV exists and its peak norm is tiny
  bool found = false;
  for (const auto& entry : std::filesystem::directory_iterator(tmp.path)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv") {
      found = true;
      std::ifstream in(entry.path());
      std::string line;
      std::getline(in, line);
      CHECK(line == "tau,full_norm,stable_norm,unstable_coeff");
      double peak = 0.0;
      while (std::getline(in, line)) {
        double tau, fn, sn, uc;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &tau, &fn, &sn, &uc) == 4);
        peak = std::max(peak, fn);
      }
      CHECK(peak < 1e-9);
    }
  }
  CHECK(found);
}

TEST_CASE("outputs are byte-identical for identical config and seed") {
  TempDir a("ssw_cli_det_a");
  TempDir b("ssw_cli_det_b");
  ExperimentConfig cfg;
  cfg.command = "evolve";
  cfg.N = 32;
  cfg.tau_end = 2.0;
  cfg.perturb = "random:1e-4";
  cfg.seed = 1234;
  cfg.out_dir = a.path.string();
  REQUIRE(run_command(cfg) == kExitOk);
  cfg.out_dir = b.path.string();
  REQUIRE(run_command(cfg) == kExitOk);

  int compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(a.path)) {
    const auto other = b.path / entry.path().filename();
    REQUIRE(std::filesystem::exists(other));
    CHECK(slurp(entry.path().string()) == slurp(other.string()));
    ++compared;
  }
  CHECK(compared >= 2);  // trace + metadata + perturbation dump
}

TEST_CASE("resolvent command reports the residual") {
  TempDir tmp("ssw_cli_res");
  ExperimentConfig cfg;
  cfg.command = "resolvent";
  cfg.N = 48;
  cfg.out_dir = tmp.path.string();
  CHECK(run_command(cfg) == kExitOk);
}

TEST_CASE("run hash is stable and configuration-sensitive") {
  ExperimentConfig cfg;
  cfg.command = "evolve";
  const std::string h1 = run_hash(cfg.summary());
  const std::string h2 = run_hash(cfg.summary());
  cfg.seed += 1;
  const std::string h3 = run_hash(cfg.summary());
  CHECK(h1 == h2);
  CHECK(h1 != h3);
}
