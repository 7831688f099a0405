#include <doctest.h>

#include <cmath>
#include <random>

#include "mhd1d/presets.hpp"
#include "mhd1d/solver.hpp"
#include "mhd1d/transform.hpp"

using namespace mhd1d;

namespace {

State cell_state(std::vector<double> tau) {
  const std::size_t n = tau.size();
  State s;
  s.grid = std::make_shared<const MassGrid>(MassGrid::uniform(n));
  s.tau = std::move(tau);
  s.theta.assign(n, 1.0);
  s.u.assign(n + 1, 0.0);
  s.a = std::make_shared<const std::vector<double>>(n, 1.0);
  return s;
}

}  // namespace

TEST_CASE("mass_to_space") {
  SUBCASE("identity for tau = 1") {
    const State s = cell_state(std::vector<double>(8, 1.0));
    const auto x = mass_to_space(s);
    for (std::size_t j = 0; j < 9; ++j) CHECK(x[j] == doctest::Approx(s.mesh().node(j)).epsilon(1e-15));
  }
  SUBCASE("piecewise tau against a prefix sum") {
    // First half-mass at tau = 1.5, second at 0.5: volume 0.75 + 0.25 = 1.
    std::vector<double> tau(10);
    for (std::size_t i = 0; i < 10; ++i) tau[i] = i < 5 ? 1.5 : 0.5;
    const auto x = mass_to_space(cell_state(tau));
    CHECK(x[5] == doctest::Approx(0.75));
    CHECK(x[10] == doctest::Approx(1.0));
    double acc = 0.0;
    for (std::size_t j = 1; j <= 10; ++j) {
      acc += 0.1 * tau[j - 1];
      CHECK(x[j] == doctest::Approx(acc).epsilon(1e-15));
    }
  }
  SUBCASE("strictly increasing for positive tau") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> pos(1e-3, 5.0);
    std::vector<double> tau(50);
    for (auto& t : tau) t = pos(rng);
    const auto x = mass_to_space(cell_state(tau));
    for (std::size_t j = 1; j < x.size(); ++j) CHECK(x[j] > x[j - 1]);
  }
}

TEST_CASE("to_eulerian") {
  SUBCASE("equilibrium") {
    const State s = cell_state(std::vector<double>(4, 1.0));
    const auto p = to_eulerian(s);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(p.rho[i] == 1.0);
      CHECK(p.x_centers[i] == doctest::Approx(0.125 + 0.25 * i));
    }
  }
  SUBCASE("tau = 2 doubles the domain") {
    const auto p = to_eulerian(cell_state(std::vector<double>(6, 2.0)));
    CHECK(p.length() == doctest::Approx(2.0));
    for (double r : p.rho) CHECK(r == 0.5);
    for (double b : p.b) CHECK(b == 0.5);
  }
  SUBCASE("round trip along a run") {
    auto g = std::make_shared<const MassGrid>(MassGrid::uniform(64));
    SchemeConfig cfg;
    cfg.t_end = 0.2;
    cfg.snapshot_interval = 0.05;
    const auto traj = run(load_preset("rough-tau", *g), g, FluidParameters{}, cfg);
    for (const auto& s : traj.snapshots) {
      CHECK(round_trip_error(s) <= 1e-13);
      double vol = 0.0;
      for (std::size_t i = 0; i < 64; ++i) vol += g->width(i) * s.tau[i];
      CHECK(std::abs(to_eulerian(s).length() - vol) <= 1e-14);
    }
  }
}
