#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pipeclimb/pipe_geometry.hpp"
#include "pipeclimb/traversal.hpp"

namespace pipeclimb {

// Line-oriented text formats. Blank lines and '#' comments are ignored;
// each remaining line is a keyword followed by whitespace-separated values.
//
// Network lines:
//   pipe_radius <mm>
//   straight <length_mm> vertical|horizontal
//   bend <centerline_radius_mm> <sweep_deg> [label]
//
// A scenario accepts the network lines (or `network <path>` to pull them in
// from a separate file) plus the configuration keys:
//   name, gear_j, gear_k, input_rpm, input_torque, inertia_I1, inertia_I01,
//   inertia_I03, mu_deg <deg>..., sprocket_mm, robot_length_mm,
//   spring_preload_mm, spring_bend_extra_mm, spring_max_mm, linkage_span_mm,
//   spring_phi_deg, dt_s, mode passive|fixed..., effective_distance_mm,
//   speed_override_mm_s, record_stride
//
// Unknown keywords and malformed values raise ConfigError with the line number.

struct Scenario {
  std::string name = "scenario";
  PipeNetwork network;
  RobotConfig robot;
  std::vector<double> mu_deg{0.0};
  std::vector<DriveMode> modes{DriveMode::PassiveDifferential};
  SimSettings settings;
};

[[nodiscard]] PipeNetwork parse_network(std::istream& in, const std::string& source);
[[nodiscard]] PipeNetwork load_network(const std::filesystem::path& path);

/// Relative `network` paths resolve against base_dir.
[[nodiscard]] Scenario parse_scenario(std::istream& in, const std::string& source,
                                      const std::filesystem::path& base_dir);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a network back into the line format.
void write_network(const PipeNetwork& network, std::ostream& out);

}  // namespace pipeclimb
