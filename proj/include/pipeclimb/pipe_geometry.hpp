#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace pipeclimb {

enum class GravityOrientation { Vertical, Horizontal };

struct PipeSpec {
  double inner_radius_mm = 137.9;
};

struct Straight {
  double length_mm = 0.0;
  GravityOrientation gravity = GravityOrientation::Horizontal;
};

struct Bend {
  double bend_radius_mm = 0.0;  // centerline radius of curvature
  double sweep_deg = 0.0;
  std::string label;
};

using Segment = std::variant<Straight, Bend>;

enum class SegmentKind { Straight, Bend };

[[nodiscard]] SegmentKind kind_of(const Segment& segment) noexcept;

/// Centerline length of one segment; a bend contributes R * sweep (radians).
[[nodiscard]] double segment_length(const Segment& segment) noexcept;

/// Short human-readable name, e.g. "straight(vertical)" or the bend label.
[[nodiscard]] std::string describe(const Segment& segment);

struct ArcPosition {
  std::size_t segment_index = 0;
  double local_s_mm = 0.0;
  double global_s_mm = 0.0;
};

/// Ordered centerline segments plus the pipe bore. Immutable once built:
/// the constructor validates every segment and caches cumulative offsets.
class PipeNetwork {
 public:
  PipeNetwork() = default;
  PipeNetwork(PipeSpec spec, std::vector<Segment> segments);

  [[nodiscard]] const PipeSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }
  [[nodiscard]] std::size_t size() const noexcept { return segments_.size(); }
  [[nodiscard]] bool empty() const noexcept { return segments_.empty(); }

  /// Global arc-length at which segment i starts. start_of(size()) == total.
  [[nodiscard]] double start_of(std::size_t i) const { return offsets_.at(i); }

 private:
  PipeSpec spec_;
  std::vector<Segment> segments_;
  std::vector<double> offsets_{0.0};
};

[[nodiscard]] double total_centerline_length(const PipeNetwork& network) noexcept;

/// D_R = D_pipe - L_R, the distance the robot centre can travel.
/// Throws InvalidRobotLength unless 0 <= L_R < D_pipe.
[[nodiscard]] double robot_path_length(const PipeNetwork& network, double robot_length_mm);
[[nodiscard]] double robot_path_length(double pipe_length_mm, double robot_length_mm);

/// Maps a global arc-length onto (segment, local offset). A position exactly
/// on a boundary belongs to the following segment; the network end maps to
/// the end of the last segment. Throws PositionError when out of range.
[[nodiscard]] ArcPosition locate(const PipeNetwork& network, double global_s_mm);

/// The five-segment reference network: 550 vertical, 90 deg elbow,
/// 350 horizontal, 180 deg U-bend, 150 horizontal, bore radius 137.9.
[[nodiscard]] PipeNetwork reference_network();

}  // namespace pipeclimb
