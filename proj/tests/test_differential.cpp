#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles/differential_graph.hpp"
#include "pipeclimb/differential.hpp"
#include "pipeclimb/errors.hpp"

using namespace pipeclimb;

namespace {

DifferentialConfig config(double j, double k, double rpm, double torque = 0.0) {
  DifferentialConfig cfg;
  cfg.gear_j = j;
  cfg.gear_k = k;
  cfg.input_rpm = rpm;
  cfg.input_torque = torque;
  return cfg;
}

}  // namespace

TEST_CASE("ring speed averages the side gears") {
  CHECK(ring_speed_from_sides(1.0, 10.0, 14.0) == 12.0);
  CHECK(ring_speed_from_sides(1.0, 12.0, 12.0) == 12.0);
  CHECK(ring_speed_from_sides(2.0, 10.0, 14.0) == 24.0);
}

TEST_CASE("equal-load output speed") {
  CHECK(equal_load_output_speed(DifferentialConfig{}) == 12.0);
  CHECK(equal_load_output_speed(config(1, 10, 120)) == 12.0);
  CHECK(equal_load_output_speed(config(1, 10, 0)) == 0.0);
  CHECK(equal_load_output_speed(config(1, 2, 60)) == 30.0);
}

TEST_CASE("steady-state and dynamic torque") {
  const DifferentialConfig cfg = config(0.1, 1.0, 120.0, 30.0);
  CHECK(steady_state_output_torque(cfg) == doctest::Approx(100.0));
  CHECK(steady_state_output_torque(config(0.1, 1.0, 120.0, 0.0)) == 0.0);
  CHECK(dynamic_output_torque(cfg, 0.0, 0.0) == steady_state_output_torque(cfg));

  DifferentialConfig loaded = cfg;
  loaded.inertia_I01 = 2.0;
  loaded.inertia_I03 = 1.0;
  CHECK(dynamic_output_torque(loaded, 1.0, 2.0) == doctest::Approx(60.0));

  // Zero inertia leaves the steady value for any accelerations.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> acc(-100.0, 100.0);
  for (int i = 0; i < 100; ++i)
    CHECK(dynamic_output_torque(cfg, acc(rng), acc(rng)) == steady_state_output_torque(cfg));

  loaded.inertia_I1 = 0.5;
  CHECK(symmetric_output_torque(loaded, 0.0) == steady_state_output_torque(loaded));
  CHECK(symmetric_output_torque(loaded, 3.0) == doctest::Approx(100.0 - 2 * 0.5 * 3.0 / 0.1));
}

TEST_CASE("dynamic torque slope matches finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.05, 5.0), acc(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    DifferentialConfig cfg = config(pos(rng), pos(rng), 120.0, pos(rng) * 10);
    cfg.inertia_I01 = pos(rng);
    cfg.inertia_I03 = pos(rng);
    const double a7 = acc(rng), a8 = acc(rng), h = 1e-3;
    const double d7 = (dynamic_output_torque(cfg, a7 + h, a8) -
                       dynamic_output_torque(cfg, a7 - h, a8)) / (2 * h);
    const double d8 = (dynamic_output_torque(cfg, a7, a8 + h) -
                       dynamic_output_torque(cfg, a7, a8 - h)) / (2 * h);
    CHECK(d7 == doctest::Approx(-cfg.inertia_I01 / cfg.gear_j).epsilon(1e-6));
    CHECK(d8 == doctest::Approx(-cfg.inertia_I03 / cfg.gear_j).epsilon(1e-6));
  }
}

TEST_CASE("allocation examples") {
  const DifferentialConfig cfg{};
  const Triple<double> equal = allocate_output_speeds(cfg, Triple<double>(1, 1, 1));
  CHECK(equal == Triple<double>::Constant(12.0));

  const Triple<double> bend = allocate_output_speeds(cfg, Triple<double>(0.6706, 1.1647, 1.1647));
  CHECK(bend(0) == doctest::Approx(8.0472).epsilon(1e-4));
  CHECK(bend(1) == doctest::Approx(13.9764).epsilon(1e-4));
  CHECK(bend(2) == doctest::Approx(13.9764).epsilon(1e-4));

  const Triple<double> skew = allocate_output_speeds(cfg, Triple<double>(2, 1, 1));
  CHECK(skew.sum() == doctest::Approx(36.0).epsilon(1e-14));
}

TEST_CASE("allocation rejects non-positive weights") {
  const DifferentialConfig cfg{};
  CHECK_THROWS_AS((void)allocate_output_speeds(cfg, Triple<double>(0, 1, 1)), AllocationError);
  CHECK_THROWS_AS((void)allocate_output_speeds(cfg, Triple<double>(1, -1, 1)), AllocationError);
  CHECK_THROWS_AS((void)allocate_output_speeds(cfg, Triple<double>(1, 1, NAN)), AllocationError);
  CHECK_THROWS_AS(validate(config(0, 1, 1)), AllocationError);
  CHECK_THROWS_AS(validate(config(1, 1, -1)), AllocationError);
}

TEST_CASE("allocation is permutation equivariant") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> w(0.01, 10.0);
  const DifferentialConfig cfg{};
  for (int i = 0; i < 1000; ++i) {
    const Triple<double> d(w(rng), w(rng), w(rng));
    const Triple<double> out = allocate_output_speeds(cfg, d);
    std::array<int, 3> perm{0, 1, 2};
    do {
      const Triple<double> pd(d(perm[0]), d(perm[1]), d(perm[2]));
      const Triple<double> pout = allocate_output_speeds(cfg, pd);
      for (int k = 0; k < 3; ++k)
        CHECK(pout(k) == doctest::Approx(out(perm[k])).epsilon(1e-14));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("gear-graph oracle agrees with allocation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.05, 5.0), ratio(0.05, 20.0), rpm(0.0, 500.0);
  for (int i = 0; i < 2000; ++i) {
    const DifferentialConfig cfg = config(ratio(rng), ratio(rng), rpm(rng));
    const Triple<double> d(w(rng), w(rng), w(rng));
    const auto graph = oracle::solve_differential_graph(cfg.gear_j, cfg.gear_k, cfg.input_rpm, d);
    const Triple<double> out = allocate_output_speeds(cfg, d);
    const double scale = std::max(1.0, out.cwiseAbs().maxCoeff());
    CHECK((graph.outputs - out).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
}

TEST_CASE("gear-graph oracle reproduces the equal-load ring relation") {
  // Equal demand: every side gear turns at ring / k and the ring averages them.
  const auto g = oracle::solve_differential_graph(1.0, 10.0, 120.0, Triple<double>(1, 1, 1));
  for (int i = 0; i < 3; ++i) {
    CHECK(g.sides(2 * i) == doctest::Approx(12.0));
    CHECK(ring_speed_from_sides(10.0, g.sides(2 * i), g.sides(2 * i + 1)) ==
          doctest::Approx(120.0));
    CHECK(g.outputs(i) == doctest::Approx(12.0));
  }
}

TEST_CASE("steady-state power balance") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ratio(0.05, 20.0), rpm(1.0, 500.0), tq(0.1, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const DifferentialConfig cfg = config(ratio(rng), ratio(rng), rpm(rng), tq(rng));
    const OutputState<double> out = equal_load_outputs(cfg);
    const double p_out = out.torques.dot(out.speeds_rpm);
    const double p_in = cfg.input_torque * cfg.input_rpm;
    CHECK(std::abs(p_out - p_in) <= 1e-9 * p_in);
  }
  // 3 outputs x 100 x 12 rpm == 30 x 120 rpm
  const DifferentialConfig cfg = config(0.1, 1.0, 120.0, 30.0);
  CHECK(equal_load_output_speed(cfg) == doctest::Approx(12.0));
  CHECK(3 * steady_state_output_torque(cfg) * equal_load_output_speed(cfg) ==
        doctest::Approx(30.0 * 120.0));
}

TEST_CASE("rpm conversion") {
  CHECK(rpm_to_rad_per_sec(60.0) == doctest::Approx(2 * std::numbers::pi));
  CHECK(rad_per_sec_to_rpm(rpm_to_rad_per_sec(12.0)) == doctest::Approx(12.0));
}

TEST_CASE("templated on scalar: long double instantiation") {
  DifferentialConfigT<long double> cfg;
  CHECK(equal_load_output_speed(cfg) == 12.0L);
  const Triple<long double> out = allocate_output_speeds(cfg, Triple<long double>(1, 2, 3));
  CHECK(std::abs(static_cast<double>(out.sum() - 36.0L)) < 1e-15);
}
