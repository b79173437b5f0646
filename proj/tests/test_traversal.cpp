#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "pipeclimb/bend_kinematics.hpp"
#include "pipeclimb/errors.hpp"
#include "pipeclimb/traversal.hpp"

using namespace pipeclimb;

namespace {

const double kNominal = std::numbers::pi * 80.0 * 12.0 / 60.0;  // 50.2655 mm/s

PipeNetwork straight_only() {
  return PipeNetwork(PipeSpec{137.9}, {Straight{550.0, GravityOrientation::Vertical},
                                       Straight{800.0, GravityOrientation::Horizontal}});
}

SimSettings with_dt(double dt, DriveMode mode = DriveMode::PassiveDifferential) {
  SimSettings s;
  s.dt_s = dt;
  s.mode = mode;
  return s;
}

}  // namespace

TEST_CASE("nominal speed comes from the differential and sprocket") {
  CHECK(nominal_speed(RobotConfig{}) == doctest::Approx(kNominal));
  CHECK(nominal_speed(with_nominal_speed(RobotConfig{}, 50.24)) == doctest::Approx(50.24));
}

TEST_CASE("step: zero dt leaves the state unchanged") {
  const PipeNetwork net = reference_network();
  const RobotConfig robot;
  const SimState s0 = initial_state(net, robot, DriveMode::PassiveDifferential, 100.0);
  const SimState s1 = step(s0, net, robot, with_dt(0.0));
  CHECK(s1.t_s == s0.t_s);
  CHECK(s1.center_mm == s0.center_mm);
  CHECK(s1.odometer_mm == s0.odometer_mm);
}

TEST_CASE("step: one second in straight pipe") {
  const PipeNetwork net = reference_network();
  const RobotConfig robot;
  const SimState s0 = initial_state(net, robot, DriveMode::PassiveDifferential, 100.0);
  const SimState s1 = step(s0, net, robot, with_dt(1.0));
  CHECK(s1.center_mm - s0.center_mm == doctest::Approx(50.265).epsilon(1e-4));
  for (int k = 0; k < 3; ++k) CHECK(s1.odometer_mm(k) == doctest::Approx(kNominal));
}

TEST_CASE("step: one second in the elbow at mu = 0") {
  const PipeNetwork net = reference_network();
  const RobotConfig robot = with_nominal_speed(RobotConfig{}, 50.24);
  const SimState s0 = initial_state(net, robot, DriveMode::PassiveDifferential, 700.0);
  const SimState s1 = step(s0, net, robot, with_dt(1.0));
  CHECK(s1.odometer_mm(0) == doctest::Approx(33.70).epsilon(0.05 / 33.7));
  CHECK(s1.odometer_mm(1) == doctest::Approx(58.51).epsilon(0.05 / 58.5));
  CHECK(s1.odometer_mm(2) == doctest::Approx(58.51).epsilon(0.05 / 58.5));
  CHECK(s1.center_mm - s0.center_mm == doctest::Approx(50.24));
  CHECK(s1.slip.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("step splits at a segment boundary") {
  const PipeNetwork net = reference_network();
  const RobotConfig robot;
  // Start half a second before the elbow.
  const double start = 550.0 - 0.5 * kNominal;
  const SimState s0 = initial_state(net, robot, DriveMode::PassiveDifferential, start);
  const SimState s1 = step(s0, net, robot, with_dt(1.0));
  CHECK(s1.segment_index == 1);
  const TrackSpeeds bend = bend_track_speeds(kNominal, 418.77, 137.9, 0.0);
  for (int k = 0; k < 3; ++k)
    CHECK(s1.odometer_mm(k) == doctest::Approx(0.5 * kNominal + 0.5 * bend(k)));
  CHECK(s1.speeds.isApprox(bend));
  CHECK(s1.compression_mm(0) == doctest::Approx(2.75));
}

TEST_CASE("step refuses to leave the network") {
  const PipeNetwork net = straight_only();
  const RobotConfig robot;
  const SimState s0 = initial_state(net, robot, DriveMode::PassiveDifferential, 1340.0);
  CHECK_THROWS_AS((void)step(s0, net, robot, with_dt(1.0)), SimulationError);
}

TEST_CASE("run: end-corrected vertical climb and full traversal timing") {
  const PipeNetwork vertical(PipeSpec{137.9}, {Straight{550.0, GravityOrientation::Vertical}});
  SimSettings s = with_dt(0.01);
  s.effective_distance_mm = 450.0;
  const TraversalReport r = run(vertical, RobotConfig{}, s);
  CHECK(r.total_time_s == doctest::Approx(450.0 / kNominal).epsilon(1e-9));
  CHECK(r.start_center_mm == 100.0);

  const TraversalReport full = run(reference_network(), RobotConfig{}, with_dt(0.01));
  CHECK(full.total_time_s == doctest::Approx((total_centerline_length(reference_network()) - 200.0) / kNominal).epsilon(1e-6));
  CHECK(full.segments.size() == 5);
  CHECK(full.segments[0].distance_mm == doctest::Approx(450.0));
  CHECK(full.segments[4].distance_mm == doctest::Approx(50.0));

  SimSettings over = with_dt(0.01);
  over.effective_distance_mm = 3016.49;
  over.speed_override_mm_s = 50.24;
  CHECK(run(reference_network(), RobotConfig{}, over).total_time_s ==
        doctest::Approx(60.0416).epsilon(1e-5));
}

TEST_CASE("run: report invariants") {
  for (double mu : {0.0, 30.0, 60.0, 211.0}) {
    for (DriveMode mode : {DriveMode::PassiveDifferential, DriveMode::FixedEqualSpeed}) {
      RobotConfig robot;
      robot.mu_deg = mu;
      SimSettings s = with_dt(0.013, mode);
      s.record_stride = 7;
      const TraversalReport r = run(reference_network(), robot, s);

      double sum = 0.0;
      double prev_exit = 0.0;
      for (const SegmentTiming& seg : r.segments) {
        CHECK(seg.entry_s == prev_exit);
        prev_exit = seg.exit_s;
        sum += seg.duration_s();
      }
      CHECK(prev_exit == r.total_time_s);
      CHECK(sum == doctest::Approx(r.total_time_s).epsilon(1e-12));

      for (std::size_t i = 1; i < r.series.size(); ++i) {
        const SimState& a = r.series[i - 1];
        const SimState& b = r.series[i];
        CHECK(b.t_s > a.t_s);
        CHECK(b.center_mm >= a.center_mm);
        CHECK((b.odometer_mm.array() >= a.odometer_mm.array()).all());
        // Sum rule: the three odometers together advance at 3v.
        const double rate = (b.odometer_mm.sum() - a.odometer_mm.sum()) / (b.t_s - a.t_s);
        CHECK(std::abs(rate - 3 * r.nominal_speed_mm_s) <= 1e-9 * 3 * r.nominal_speed_mm_s);
      }
      CHECK(r.series.back().t_s == r.total_time_s);
    }
  }
}

TEST_CASE("run: halving dt leaves total time within the first-order bound") {
  const RobotConfig robot;
  double prev = run(reference_network(), robot, with_dt(0.2)).total_time_s;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    const double t = run(reference_network(), robot, with_dt(dt)).total_time_s;
    CHECK(std::abs(t - prev) < 2 * dt * kNominal);
    CHECK(t == doctest::Approx((total_centerline_length(reference_network()) - 200.0) / kNominal).epsilon(1e-9));
    prev = t;
  }
}

TEST_CASE("run: passive and fixed modes coincide on straight-only networks") {
  const TraversalReport a = run(straight_only(), RobotConfig{}, with_dt(0.01));
  const TraversalReport b =
      run(straight_only(), RobotConfig{}, with_dt(0.01, DriveMode::FixedEqualSpeed));
  std::ostringstream ca, cb;
  write_timeseries_csv(a, ca);
  write_timeseries_csv(b, cb);
  CHECK(ca.str() == cb.str());
  CHECK(a.total_time_s == b.total_time_s);
  CHECK(slip_profile(b).max_abs_mm_s.maxCoeff() == 0.0);
}

TEST_CASE("slip profile") {
  RobotConfig robot;
  const TraversalReport passive = run(reference_network(), robot, with_dt(0.01));
  const SlipProfile ps = slip_profile(passive);
  CHECK(ps.max_abs_mm_s.maxCoeff() == 0.0);
  CHECK(ps.integral_abs_mm.maxCoeff() == 0.0);

  const TraversalReport fixed =
      run(reference_network(), robot, with_dt(0.01, DriveMode::FixedEqualSpeed));
  const SlipProfile fs = slip_profile(fixed);
  const double inner = kNominal * 137.9 / 418.77;
  CHECK(fs.max_abs_mm_s(0) == doctest::Approx(inner).epsilon(1e-6));
  // Inner track slips by v*r/R for the whole elbow and U-bend.
  const double bend_time = fixed.segments[1].duration_s() + fixed.segments[3].duration_s();
  CHECK(fs.integral_abs_mm(0) == doctest::Approx(inner * bend_time).epsilon(1e-4));
}

TEST_CASE("run: error paths") {
  CHECK_THROWS_AS((void)run(PipeNetwork{}, RobotConfig{}, with_dt(0.01)), SimulationError);
  CHECK_THROWS_AS((void)run(reference_network(), RobotConfig{}, with_dt(0.0)), SimulationError);

  RobotConfig stopped;
  stopped.differential.input_rpm = 0.0;
  CHECK_THROWS_AS((void)run(reference_network(), stopped, with_dt(0.01)), SimulationError);

  RobotConfig huge;
  huge.robot_length_mm = 5000.0;
  CHECK_THROWS_AS((void)run(reference_network(), huge, with_dt(0.01)), InvalidRobotLength);

  SimSettings guard = with_dt(1e-6);
  guard.max_steps = 1000;
  CHECK_THROWS_AS((void)run(reference_network(), RobotConfig{}, guard), SimulationError);

  RobotConfig squeezed;
  squeezed.springs.preload_mm = 15.0;
  CHECK_THROWS_AS((void)run(reference_network(), squeezed, with_dt(0.01)), OverCompression);

  SimSettings far = with_dt(0.01);
  far.effective_distance_mm = 4000.0;
  CHECK_THROWS_AS((void)run(reference_network(), RobotConfig{}, far), SimulationError);
}

TEST_CASE("time-series CSV layout") {
  SimSettings s = with_dt(0.5);
  s.record_stride = 1;
  const TraversalReport r = run(straight_only(), RobotConfig{}, s);
  std::ostringstream out;
  write_timeseries_csv(r, out);
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == kTimeSeriesHeader);
  CHECK(first.rfind("0.000000,100.000000,50.265482,", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), ',') == 13);
}
