#include <random>
#include <sstream>

#include "biovi/relativity.hpp"
#include "doctest.h"

using namespace biovi;

TEST_CASE("lorentz factor") {
  CHECK(lorentz_factor(0.0) == doctest::Approx(1.0));
  CHECK(lorentz_factor(0.6 * constants::c) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK_THROWS_AS(lorentz_factor(constants::c), SuperluminalInput);
  CHECK_THROWS_AS(lorentz_factor(2.0 * constants::c), SuperluminalInput);
}

TEST_CASE("lorentz factor identity (property)") {
  std::mt19937_64 rng(21u);
  std::uniform_real_distribution<double> u(0.0, 0.999999);
  double prev = 0.0;
  for (int i = 0; i < 600; ++i) {
    double beta = u(rng);
    double v = beta * constants::c;
    double g = lorentz_factor(v);
    CHECK(g * g * (1.0 - beta * beta) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g >= 1.0);
    (void)prev;
  }
  // Strictly increasing on a sorted sweep.
  for (int i = 1; i < 500; ++i) {
    double v1 = 0.999 * constants::c * (i - 1) / 500.0;
    double v2 = 0.999 * constants::c * i / 500.0;
    CHECK(lorentz_factor(v2) > lorentz_factor(v1));
  }
}

TEST_CASE("lorentz force and power") {
  auto fp = lorentz_force_power(1.0, {1, 0, 0}, {0, 0, 0}, {0, 0, 0});
  CHECK(fp.force.x == doctest::Approx(1.0));
  CHECK(fp.power == doctest::Approx(0.0).scale(1.0));

  auto perp = lorentz_force_power(2.0, {0, 1, 0}, {0, 0, 5}, {3, 0, 0});
  CHECK(perp.power == doctest::Approx(0.0).scale(1.0));

  auto drift = lorentz_force_power(1.6e-19, {1e3, 0, 0}, {0, 0, 0}, {1e2, 0, 0});
  CHECK(drift.power == doctest::Approx(1.6e-14).epsilon(1e-12));
}

TEST_CASE("power is invariant under B (property)") {
  std::mt19937_64 rng(22u);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 600; ++i) {
    double q = u(rng);
    Vec3 E{u(rng), u(rng), u(rng)};
    Vec3 v{u(rng), u(rng), u(rng)};
    Vec3 B1{u(rng), u(rng), u(rng)};
    Vec3 B2{u(rng), u(rng), u(rng)};
    auto p1 = lorentz_force_power(q, E, B1, v);
    auto p2 = lorentz_force_power(q, E, B2, v);
    CHECK(p1.power == p2.power);
    // And the magnetic part of the force never works: F_B . v = 0.
    Vec3 fb = v.cross(B1) * q;
    double rel = std::abs(fb.dot(v)) / std::max(1.0, fb.norm() * v.norm());
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("consumed proper time") {
  PathSample rest{};
  rest.t_q = 1.0;
  CHECK(consumed_proper_time({rest}) == doctest::Approx(1.0));

  PathSample null{};
  null.t_q = 1.0;
  null.x_q = constants::c;
  CHECK(consumed_proper_time({null}) == doctest::Approx(0.0).scale(1.0));

  CHECK_THROWS_AS(consumed_proper_time({}), EmptyPath);

  PathSample half = rest;
  half.weight = 0.5;
  CHECK_THROWS_AS(consumed_proper_time({half}), WeightSumError);

  PathSample bad{};
  bad.t_q = 0.0;
  bad.x_q = 1.0;
  try {
    consumed_proper_time({bad});
    FAIL("expected NegativeRadicand");
  } catch (const NegativeRadicand& e) {
    CHECK(e.sample_index() == 0);
  }

  // Monotone non-increasing in v_rgb.
  double last = 2.0;
  for (int i = 0; i < 500; ++i) {
    PathSample s{};
    s.t_q = 1.0;
    s.v_rgb = 1e3 * i;
    double tau = consumed_proper_time({s});
    CHECK(tau <= last);
    last = tau;
  }
}

TEST_CASE("energy pixel product") {
  Quantity b = energy_pixel_product(5.26908545e-20, 0.1);
  CHECK(b.magnitude() == doctest::Approx(5.26908545e-21).epsilon(1e-12));
  CHECK(format(b.dim()) == "kg m^3 s^-3");
  CHECK(energy_pixel_product(1.0, 0.0).magnitude() == 0.0);
}

TEST_CASE("spacetime interval conventions") {
  double s2 = spacetime_interval(1.0, 0.0, IntervalConvention::Paper);
  CHECK(s2 == doctest::Approx(8.98755179e16).epsilon(1e-8));
  CHECK(spacetime_interval(1.0, constants::c, IntervalConvention::Paper) ==
        doctest::Approx(0.0).scale(1e16));

  std::mt19937_64 rng(23u);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 600; ++i) {
    double t = u(rng), r = u(rng), add = u(rng);
    CHECK(spacetime_interval(t, r, IntervalConvention::Eta, add) ==
          -spacetime_interval(t, r, IntervalConvention::Paper, add));
  }
}

TEST_CASE("scope area") {
  Quantity one = scope_area(1.0, {{1.0, 1.0}});
  CHECK(one.magnitude() == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(one.dim() == parse_dimension("m^5"));
  CHECK(scope_area(2.0, {{1.0, 1.0}}).magnitude() == doctest::Approx(4.0 * one.magnitude()));
  CHECK_THROWS_AS(scope_area(1.0, {}), EmptySamples);

  // Riemann sum over s(x)=x on [0,1] converges to 2 pi r^2 / 3.
  std::vector<ScopeSample> samples;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    double x = (i + 0.5) / n;
    samples.push_back({x, 1.0 / n});
  }
  CHECK(scope_area(1.0, samples).magnitude() ==
        doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-3));
}

TEST_CASE("scope product and differential") {
  ScopeProduct p = scope_product(1.0, 1.0);
  CHECK(p.left.magnitude() == doctest::Approx(1.0));
  CHECK(p.right.magnitude() == doctest::Approx(1.0));
  CHECK(p.left.dim() == parse_dimension("m"));
  CHECK(p.right.dim() == parse_dimension("m^5"));

  ScopeProduct q = scope_product(8.0, 2.0);
  CHECK(q.left.magnitude() == doctest::Approx(2.0));
  CHECK(q.right.magnitude() == doctest::Approx(32.0));
  // right/left differs by s^4 at the dimension level.
  CHECK(q.right.dim() / q.left.dim() == parse_dimension("m^4"));
  CHECK_THROWS_AS(scope_product(1.0, 0.0), ZeroInterval);

  ScopeDifferential d = scope_differential(1.0, 1.0, 2);
  CHECK(d.d_r == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(d.d_s == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("observation density") {
  Quantity rho = observation_density(70.0, 1.5e-9);
  CHECK(rho.magnitude() == doctest::Approx(4.66666667e10).epsilon(1e-8));
  CHECK(rho.dim() == parse_dimension("kg m^-3"));
  CHECK(observation_density(1.0, 1.0).magnitude() == doctest::Approx(1.0));
  CHECK_THROWS_AS(observation_density(1.0, 0.0), ZeroVolume);
}

TEST_CASE("body ratio percent") {
  auto q = [](double m, const char* u) { return Quantity{m, parse_dimension(u)}; };
  RatioPercent mass = body_ratio_percent(q(1.2e-5, "kg"), q(61.0, "kg"), q(70.0, "kg"));
  CHECK(mass.ratio == doctest::Approx(1.832061e-5).epsilon(1e-5));
  CHECK(mass.complement == doctest::Approx(99.9999817).epsilon(1e-9));

  RatioPercent life = body_ratio_percent(q(604800.0, "s"), q(1.262277e9, "s"), q(2.366769e9, "s"));
  CHECK(life.complement == doctest::Approx(99.9666689).epsilon(1e-7));

  RatioPercent same = body_ratio_percent(q(5.0, "m"), q(5.0, "m"));
  CHECK(same.ratio == doctest::Approx(100.0));
  CHECK(same.complement == doctest::Approx(0.0).scale(1.0));
  CHECK(same.ratio + same.complement == 100.0);

  CHECK_THROWS_AS(body_ratio_percent(q(1.0, "kg"), q(1.0, "m")), DimensionMismatch);
  CHECK_THROWS_AS(body_ratio_percent(q(1.0, "kg"), q(0.0, "kg")), ZeroBaseline);
}

TEST_CASE("telescoped proper time and congruence") {
  TelescopedTime t = telescoped_proper_time(10.0, {1.0, 2.0, 3.0});
  CHECK(t.tau == doctest::Approx(4.0));
  CHECK(t.consumed_remainder == doctest::Approx(6.0));
  CHECK(congruent_bodies(0.0, 10.0));
  CHECK(congruent_bodies(5e-9, 10.0));
  CHECK_FALSE(congruent_bodies(1e-6, 10.0));
}

TEST_CASE("body CSV loader") {
  std::istringstream good(
      "label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual\n"
      "fly,small,1.2e-5,0.006,604800,1.5e-9,1\n"
      "man,giant,65.5,1.65,1.814523e9,0.07,1\n");
  auto bodies = load_bodies_csv(good);
  REQUIRE(bodies.size() == 2);
  CHECK(bodies[0].label == "fly");
  CHECK(bodies[0].kind == BodyKind::Small);
  CHECK(bodies[1].mass_kg == doctest::Approx(65.5));
  CHECK(comparable_pair(bodies[0], bodies[1]));

  std::istringstream bad_header("a,b\n");
  CHECK_THROWS_AS(load_bodies_csv(bad_header), FormatError);

  std::istringstream bad_bool(
      "label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual\n"
      "x,small,1,1,1,1,maybe\n");
  CHECK_THROWS_AS(load_bodies_csv(bad_bool), FormatError);

  std::istringstream bad_num(
      "label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual\n"
      "x,small,huge,1,1,1,0\n");
  CHECK_THROWS_AS(load_bodies_csv(bad_num), FormatError);
}
