#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pipeclimb/differential.hpp"
#include "pipeclimb/pipe_geometry.hpp"
#include "pipeclimb/suspension.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

enum class DriveMode {
  PassiveDifferential,  // tracks follow the geometric no-slip demand
  FixedEqualSpeed,      // all three tracks locked to the centre speed
};

[[nodiscard]] std::string to_string(DriveMode mode);
[[nodiscard]] DriveMode parse_drive_mode(const std::string& text);

struct RobotConfig {
  double robot_length_mm = 200.0;
  double sprocket_diameter_mm = 80.0;
  double mu_deg = 0.0;  // orientation of module A, held through the whole run
  DifferentialConfig differential;
  SpringConfig springs;
};

void validate(const RobotConfig& robot);

struct SimSettings {
  double dt_s = 0.01;
  DriveMode mode = DriveMode::PassiveDifferential;
  // Distance the centre travels; defaults to D_pipe - L_R.
  std::optional<double> effective_distance_mm;
  // Forces the centre speed by rescaling the differential input speed.
  std::optional<double> speed_override_mm_s;
  std::size_t record_stride = 10;
  std::size_t max_steps = 10'000'000;
};

struct SimState {
  double t_s = 0.0;
  double center_mm = 0.0;
  std::size_t segment_index = 0;
  Triple<double> odometer_mm = Triple<double>::Zero();
  TrackSpeeds speeds = TrackSpeeds::Zero();     // commanded track speeds at the pose
  TrackSpeeds slip = TrackSpeeds::Zero();       // commanded - geometric no-slip speed
  Triple<double> compression_mm = Triple<double>::Zero();
  Triple<double> slip_distance_mm = Triple<double>::Zero();  // integral of |slip|
  Triple<double> slip_peak_mm_s = Triple<double>::Zero();    // running max of |slip|
};

/// Track speeds for one pose. Straight pipe demands the centre speed on all
/// three tracks; a bend demands the per-module no-slip speeds.
struct PoseKinematics {
  TrackSpeeds commanded;
  TrackSpeeds geometric;
  Triple<double> compression_mm;
};

/// Centre speed produced by the differential at equal load: the sprocket rim
/// speed of j*w_u/k.
[[nodiscard]] double nominal_speed(const RobotConfig& robot);

/// Returns robot with the differential input speed rescaled so that
/// nominal_speed() equals speed_mm_s.
[[nodiscard]] RobotConfig with_nominal_speed(RobotConfig robot, double speed_mm_s);

[[nodiscard]] PoseKinematics pose_kinematics(const PipeNetwork& network, const RobotConfig& robot,
                                             DriveMode mode, std::size_t segment_index);

/// Robot placed with its centre at center_mm, at rest on the odometers.
[[nodiscard]] SimState initial_state(const PipeNetwork& network, const RobotConfig& robot,
                                     DriveMode mode, double center_mm);

/// Advances the state by settings.dt_s. A step that crosses segment
/// boundaries is split at each one so speeds stay piecewise constant.
/// Throws SimulationError when the centre would leave the network.
[[nodiscard]] SimState step(const SimState& state, const PipeNetwork& network,
                            const RobotConfig& robot, const SimSettings& settings);

struct SegmentTiming {
  std::size_t index = 0;
  std::string name;
  SegmentKind kind = SegmentKind::Straight;
  double entry_s = 0.0;
  double exit_s = 0.0;
  double distance_mm = 0.0;    // centre distance covered inside the segment
  TrackSpeeds mean_speeds = TrackSpeeds::Zero();  // odometer delta / duration

  [[nodiscard]] double duration_s() const noexcept { return exit_s - entry_s; }
};

struct TraversalReport {
  DriveMode mode = DriveMode::PassiveDifferential;
  double mu_deg = 0.0;
  double dt_s = 0.0;
  double nominal_speed_mm_s = 0.0;
  double start_center_mm = 0.0;
  double end_center_mm = 0.0;
  double total_time_s = 0.0;
  std::vector<SegmentTiming> segments;
  std::vector<SimState> series;
  SimState final_state;

  [[nodiscard]] double distance_mm() const noexcept { return end_center_mm - start_center_mm; }
};

/// Drives the centre over the effective distance D (D_pipe - L_R unless
/// overridden). The centre starts L_R/2 into the network, pulled back towards
/// the entry only as far as needed for D to fit. With the default D it stops
/// L_R/2 short of the end.
[[nodiscard]] TraversalReport run(const PipeNetwork& network, const RobotConfig& robot,
                                  const SimSettings& settings);

struct SlipProfile {
  std::vector<double> t_s;
  std::vector<TrackSpeeds> slip;
  Triple<double> max_abs_mm_s = Triple<double>::Zero();
  Triple<double> integral_abs_mm = Triple<double>::Zero();
};

[[nodiscard]] SlipProfile slip_profile(const TraversalReport& report);

inline constexpr const char* kTimeSeriesHeader =
    "t_s,center_mm,vA_mm_s,vB_mm_s,vC_mm_s,odoA_mm,odoB_mm,odoC_mm,"
    "compA_mm,compB_mm,compC_mm,slipA_mm_s,slipB_mm_s,slipC_mm_s";

void write_timeseries_csv(const TraversalReport& report, std::ostream& out);

}  // namespace pipeclimb
