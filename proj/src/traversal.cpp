#include "pipeclimb/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pipeclimb/bend_kinematics.hpp"
#include "pipeclimb/errors.hpp"

namespace pipeclimb {
namespace {

struct Crossing {
  std::size_t entered = 0;  // index of the segment entered
  double t_s = 0.0;
  Triple<double> odometer_mm;
};

// Moves the state forward by dt, splitting at segment boundaries. Every
// boundary crossed is appended to crossings when it is non-null.
SimState advance(const SimState& state, const PipeNetwork& network, const RobotConfig& robot,
                 DriveMode mode, double dt, double v, std::vector<Crossing>* crossings) {
  SimState next = state;
  if (dt <= 0.0) return next;

  const double total = total_centerline_length(network);
  double remaining = dt;
  PoseKinematics pose = pose_kinematics(network, robot, mode, next.segment_index);

  while (remaining > 0.0) {
    const std::size_t seg = next.segment_index;
    const double seg_end = network.start_of(seg + 1);
    const double time_to_end = (seg_end - next.center_mm) / v;
    const bool last = seg + 1 == network.size();

    double used = remaining;
    bool crossed = false;
    if (time_to_end <= remaining) {
      if (last) {
        // Tolerate rounding when the step lands on the network end.
        if (remaining - time_to_end > 1e-9 * std::max(1.0, dt))
          throw SimulationError("robot centre would leave the network end");
        used = remaining;
      } else {
        used = time_to_end;
        crossed = true;
      }
    }

    next.t_s += used;
    next.odometer_mm += pose.commanded * used;
    const Triple<double> abs_slip = (pose.commanded - pose.geometric).cwiseAbs();
    next.slip_distance_mm += abs_slip * used;
    next.slip_peak_mm_s = next.slip_peak_mm_s.cwiseMax(abs_slip);
    remaining -= used;

    if (crossed) {
      next.center_mm = seg_end;
      next.segment_index = seg + 1;
      if (crossings) crossings->push_back({seg + 1, next.t_s, next.odometer_mm});
      pose = pose_kinematics(network, robot, mode, next.segment_index);
    } else {
      next.center_mm = std::min(next.center_mm + v * used, last ? total : seg_end);
    }
  }

  next.speeds = pose.commanded;
  next.slip = pose.commanded - pose.geometric;
  next.compression_mm = pose.compression_mm;
  return next;
}

}  // namespace

std::string to_string(DriveMode mode) {
  return mode == DriveMode::PassiveDifferential ? "passive" : "fixed";
}

DriveMode parse_drive_mode(const std::string& text) {
  if (text == "passive" || text == "passive-differential") return DriveMode::PassiveDifferential;
  if (text == "fixed" || text == "fixed-equal-speed") return DriveMode::FixedEqualSpeed;
  throw Error("unknown drive mode '" + text + "' (expected passive or fixed)");
}

void validate(const RobotConfig& robot) {
  if (!(robot.robot_length_mm > 0.0))
    throw InvalidRobotLength("robot length must be > 0");
  if (!(robot.sprocket_diameter_mm > 0.0)) throw GeometryError("sprocket diameter must be > 0");
  if (!std::isfinite(robot.mu_deg)) throw GeometryError("orientation must be finite");
  validate(robot.differential);
  validate(robot.springs);
}

double nominal_speed(const RobotConfig& robot) {
  return linear_track_speed(equal_load_output_speed(robot.differential),
                            robot.sprocket_diameter_mm);
}

RobotConfig with_nominal_speed(RobotConfig robot, double speed_mm_s) {
  const double out_rpm = sprocket_rpm_for_speed(speed_mm_s, robot.sprocket_diameter_mm);
  robot.differential.input_rpm = out_rpm * robot.differential.gear_k / robot.differential.gear_j;
  return robot;
}

PoseKinematics pose_kinematics(const PipeNetwork& network, const RobotConfig& robot,
                               DriveMode mode, std::size_t segment_index) {
  const Segment& segment = network.segments().at(segment_index);
  const double v = nominal_speed(robot);
  const SegmentKind kind = kind_of(segment);
  const Triple<double> angles = module_angles(robot.mu_deg);

  PoseKinematics pose;
  if (kind == SegmentKind::Bend) {
    const auto& bend = std::get<Bend>(segment);
    pose.geometric = bend_track_speeds(v, bend.bend_radius_mm, network.spec().inner_radius_mm,
                                       robot.mu_deg);
  } else {
    pose.geometric = TrackSpeeds::Constant(v);
  }
  // The passive differential settles on whatever split the pipe demands;
  // locked tracks are all driven at the centre speed.
  pose.commanded =
      mode == DriveMode::PassiveDifferential ? pose.geometric : TrackSpeeds::Constant(v);
  for (Eigen::Index i = 0; i < 3; ++i)
    pose.compression_mm(i) = compression_at(kind, angles(i), robot.springs);
  return pose;
}

SimState initial_state(const PipeNetwork& network, const RobotConfig& robot, DriveMode mode,
                       double center_mm) {
  SimState state;
  state.center_mm = center_mm;
  state.segment_index = locate(network, center_mm).segment_index;
  const PoseKinematics pose = pose_kinematics(network, robot, mode, state.segment_index);
  state.speeds = pose.commanded;
  state.slip = pose.commanded - pose.geometric;
  state.compression_mm = pose.compression_mm;
  state.slip_peak_mm_s = state.slip.cwiseAbs();
  return state;
}

SimState step(const SimState& state, const PipeNetwork& network, const RobotConfig& robot,
              const SimSettings& settings) {
  if (settings.dt_s < 0.0) throw SimulationError("time step must be >= 0");
  return advance(state, network, robot, settings.mode, settings.dt_s, nominal_speed(robot),
                 nullptr);
}

TraversalReport run(const PipeNetwork& network, const RobotConfig& robot_in,
                    const SimSettings& settings) {
  if (network.empty()) throw SimulationError("cannot simulate an empty network");
  if (!(settings.dt_s > 0.0)) throw SimulationError("time step must be > 0");
  validate(robot_in);

  RobotConfig robot = robot_in;
  if (settings.speed_override_mm_s) {
    if (!(*settings.speed_override_mm_s > 0.0))
      throw SimulationError("speed override must be > 0");
    robot = with_nominal_speed(robot, *settings.speed_override_mm_s);
  }
  const double v = nominal_speed(robot);
  if (!(v > 0.0) || !std::isfinite(v))
    throw SimulationError("robot centre speed is zero; the traversal cannot terminate");

  const double pipe_length = total_centerline_length(network);
  double distance = robot_path_length(network, robot.robot_length_mm);
  if (settings.effective_distance_mm) {
    distance = *settings.effective_distance_mm;
    if (!(distance > 0.0) || !(distance <= pipe_length))
      throw SimulationError("effective distance must lie in (0, network length]");
  }

  TraversalReport report;
  report.mode = settings.mode;
  report.mu_deg = normalize_deg(robot.mu_deg);
  report.dt_s = settings.dt_s;
  report.nominal_speed_mm_s = v;
  report.start_center_mm = std::min(robot.robot_length_mm / 2.0, pipe_length - distance);
  report.end_center_mm = report.start_center_mm + distance;

  SimState state = initial_state(network, robot, settings.mode, report.start_center_mm);
  report.series.push_back(state);

  SegmentTiming open;
  open.index = state.segment_index;
  open.entry_s = 0.0;
  Triple<double> open_odometer = state.odometer_mm;
  double open_center = state.center_mm;

  auto close_segment = [&](double t, const Triple<double>& odo, double center) {
    open.name = describe(network.segments()[open.index]);
    open.kind = kind_of(network.segments()[open.index]);
    open.exit_s = t;
    open.distance_mm = center - open_center;
    if (open.duration_s() > 0.0) open.mean_speeds = (odo - open_odometer) / open.duration_s();
    report.segments.push_back(open);
  };

  const std::size_t stride = std::max<std::size_t>(1, settings.record_stride);
  std::vector<Crossing> crossings;
  std::size_t steps = 0;
  while (state.center_mm < report.end_center_mm) {
    if (++steps > settings.max_steps)
      throw SimulationError("traversal did not finish within " +
                            std::to_string(settings.max_steps) + " steps");
    const double remaining = report.end_center_mm - state.center_mm;
    const bool final_step = remaining <= v * settings.dt_s;
    const double dt = final_step ? remaining / v : settings.dt_s;

    crossings.clear();
    SimState next = advance(state, network, robot, settings.mode, dt, v, &crossings);
    if (final_step) next.center_mm = report.end_center_mm;

    for (const Crossing& c : crossings) {
      close_segment(c.t_s, c.odometer_mm, network.start_of(c.entered));
      open = SegmentTiming{};
      open.index = c.entered;
      open.entry_s = c.t_s;
      open_odometer = c.odometer_mm;
      open_center = network.start_of(c.entered);
    }

    state = next;
    if (final_step || steps % stride == 0) report.series.push_back(state);
  }

  // A crossing that lands exactly on the end leaves a zero-length segment open.
  if (state.t_s > open.entry_s || report.segments.empty())
    close_segment(state.t_s, state.odometer_mm, state.center_mm);

  report.total_time_s = state.t_s;
  report.final_state = state;
  return report;
}

SlipProfile slip_profile(const TraversalReport& report) {
  SlipProfile profile;
  profile.t_s.reserve(report.series.size());
  profile.slip.reserve(report.series.size());
  for (const SimState& s : report.series) {
    profile.t_s.push_back(s.t_s);
    profile.slip.push_back(s.slip);
  }
  profile.max_abs_mm_s = report.final_state.slip_peak_mm_s;
  profile.integral_abs_mm = report.final_state.slip_distance_mm;
  return profile;
}

void write_timeseries_csv(const TraversalReport& report, std::ostream& out) {
  out << kTimeSeriesHeader << '\n';
  char line[512];
  for (const SimState& s : report.series) {
    std::snprintf(line, sizeof line,
                  "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  s.t_s, s.center_mm, s.speeds(0), s.speeds(1), s.speeds(2), s.odometer_mm(0),
                  s.odometer_mm(1), s.odometer_mm(2), s.compression_mm(0), s.compression_mm(1),
                  s.compression_mm(2), s.slip(0) + 0.0, s.slip(1) + 0.0, s.slip(2) + 0.0);
    out << line;
  }
}

}  // namespace pipeclimb
