#include <doctest.h>

#include <cmath>
#include <random>

#include "mhd1d/model.hpp"

using namespace mhd1d;

namespace {

InitialData constant_data(std::size_t n, double tau, double u, double b, double theta) {
  InitialData d;
  d.tau0.assign(n, tau);
  d.u0.assign(n + 1, u);
  d.u0.front() = d.u0.back() = 0.0;
  d.b0.assign(n, b);
  d.theta0.assign(n, theta);
  return d;
}

}  // namespace

TEST_CASE("fluid parameters must be positive") {
  FluidParameters p;
  CHECK_NOTHROW(p.validate());
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.kappa = 1.0;
  p.R = std::nan("");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("mass grid layout") {
  const auto g = MassGrid::uniform(4);
  CHECK(g.n_cells() == 4);
  CHECK(g.n_nodes() == 5);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(4) == 1.0);
  CHECK(g.center(1) == doctest::Approx(0.375));
  CHECK(g.dual_width(0) == doctest::Approx(0.125));
  CHECK(g.dual_width(2) == doctest::Approx(0.25));
  double total = 0.0;
  for (double h : g.widths()) total += h;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

  const auto nu = MassGrid::from_nodes({0.0, 0.1, 0.5, 1.0});
  CHECK(nu.width(1) == doctest::Approx(0.4));
  CHECK(nu.dual_width(1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(MassGrid::from_nodes({0.0, 0.6, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MassGrid::from_nodes({0.0, 0.5, 0.9}), std::invalid_argument);
  CHECK_THROWS_AS(MassGrid::uniform(0), std::invalid_argument);
}

TEST_CASE("validate_initial") {
  const auto g = MassGrid::uniform(8);

  SUBCASE("constant admissible data") {
    const auto d = validate_initial(constant_data(8, 1.0, 0.0, 0.0, 1.0), g);
    CHECK(d.m == 1.0);
    CHECK(d.M == 1.0);
    for (double a : d.a) CHECK(a == 0.0);
  }
  SUBCASE("a is b0 tau0") {
    const auto d = validate_initial(constant_data(8, 2.0, 0.0, 3.0, 1.0), g);
    for (double a : d.a) CHECK(a == 6.0);
  }
  SUBCASE("bounds are the field extrema") {
    auto raw = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    raw.tau0[3] = 0.5;
    raw.tau0[5] = 1.5;
    raw.theta0[2] = 0.7;
    const auto d = validate_initial(raw, g);
    CHECK(d.m == 0.5);
    CHECK(d.M == 1.5);
  }
  SUBCASE("rejections") {
    auto zero_tau = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    zero_tau.tau0[4] = 0.0;
    CHECK_THROWS_AS(validate_initial(zero_tau, g), std::invalid_argument);

    auto cold = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    cold.theta0[0] = -1.0;
    CHECK_THROWS_AS(validate_initial(cold, g), std::invalid_argument);

    auto moving_wall = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    moving_wall.u0.back() = 0.1;
    CHECK_THROWS_AS(validate_initial(moving_wall, g), std::invalid_argument);

    auto nan_b = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    nan_b.b0[1] = std::nan("");
    CHECK_THROWS_AS(validate_initial(nan_b, g), std::invalid_argument);

    auto short_u = constant_data(8, 1.0, 0.0, 0.0, 1.0);
    short_u.u0.pop_back();
    CHECK_THROWS_AS(validate_initial(short_u, g), std::invalid_argument);
  }
}

TEST_CASE("pressure") {
  FluidParameters p;
  CHECK(pressure(1.0, 1.0, p) == 1.0);
  p.R = 2.0;
  CHECK(pressure(0.5, 1.0, p) == 4.0);
  p.R = 1.0;
  CHECK(pressure(1.0, 0.0, p) == 0.0);
  CHECK_THROWS_AS(pressure(0.0, 1.0, p), std::domain_error);
}

TEST_CASE("stress_sigma") {
  FluidParameters p;
  CHECK(stress_sigma(1.0, 1.0, 0.0, p) == -1.0);
  CHECK(stress_sigma(1.0, 0.0, 3.0, p) == 3.0);
  p.mu = 2.0;
  CHECK(stress_sigma(2.0, 2.0, 1.0, p) == 0.0);
  CHECK_THROWS_AS(stress_sigma(-1.0, 1.0, 0.0, p), std::domain_error);
}

TEST_CASE("flux_psi") {
  CHECK(flux_psi(0.0, 0.0) == 0.0);
  CHECK(flux_psi(1.0, 2.0) == -1.0);
  CHECK(flux_psi(-1.0, 1.0) == -1.5);
}

TEST_CASE("magnetic_field") {
  CHECK(magnetic_field(0.0, 3.7) == 0.0);
  CHECK(magnetic_field(1.0, 2.0) == 0.5);
  CHECK(magnetic_field(6.0, 3.0) == 2.0);
  CHECK(magnetic_field(6.0, 3.0) * 3.0 == 6.0);
  CHECK_THROWS_AS(magnetic_field(1.0, 0.0), std::domain_error);
}

TEST_CASE("property: b tau reproduces a within one rounding") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ex(-20.0, 20.0);
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  for (int k = 0; k < 20000; ++k) {
    const double a = mant(rng) * std::ldexp(1.0, static_cast<int>(ex(rng)));
    const double tau = mant(rng) * std::ldexp(1.0, static_cast<int>(ex(rng)));
    const double prod = magnetic_field(a, tau) * tau;
    // a/tau and the product each round once: within 2 ulp of a.
    CHECK(std::abs(prod - a) <= 2.0 * std::numeric_limits<double>::epsilon() * a);
  }
}

TEST_CASE("property: stress is affine in u_x, flux affine in b^2") {
  FluidParameters p{1.3, 0.7, 2.1, 0.9};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const double tau = pos(rng), theta = pos(rng), ux = d(rng), vx = d(rng);
    const double al = d(rng), be = d(rng);
    const double lhs = stress_sigma(tau, theta, al * ux + be * vx, p);
    const double rhs = al * stress_sigma(tau, 0.0, ux, p) + be * stress_sigma(tau, 0.0, vx, p) +
                       stress_sigma(tau, theta, 0.0, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(10.0));

    const double s = d(rng), b1 = d(rng), b2 = d(rng);
    CHECK(flux_psi(s, b1) - flux_psi(s, b2) ==
          doctest::Approx(0.5 * (b2 * b2 - b1 * b1)).epsilon(1e-12).scale(10.0));
  }
}

TEST_CASE("state invariants") {
  const auto g = std::make_shared<const MassGrid>(MassGrid::uniform(4));
  const auto d = validate_initial(constant_data(4, 1.0, 0.0, 1.0, 1.0), *g);
  State s = d.to_state(g);
  CHECK_NOTHROW(s.check_invariants());
  CHECK(s.b(2) == 1.0);
  s.u[0] = 1e-300;
  CHECK_THROWS_AS(s.check_invariants(), std::invalid_argument);
  s.u[0] = 0.0;
  s.theta[1] = 0.0;
  CHECK_THROWS_AS(s.check_invariants(), std::invalid_argument);
}
