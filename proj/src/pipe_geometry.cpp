#include "pipeclimb/pipe_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pipeclimb/errors.hpp"

namespace pipeclimb {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void validate(const Segment& segment, const PipeSpec& spec, std::size_t index) {
  const std::string where = "segment " + std::to_string(index) + ": ";
  std::visit(overloaded{
                 [&](const Straight& s) {
                   if (!(s.length_mm > 0.0) || !std::isfinite(s.length_mm))
                     throw GeometryError(where + "straight length must be > 0");
                 },
                 [&](const Bend& b) {
                   if (!(b.sweep_deg > 0.0) || !(b.sweep_deg < 360.0))
                     throw GeometryError(where + "bend sweep must lie in (0, 360) degrees");
                   if (!(b.bend_radius_mm > spec.inner_radius_mm) || !std::isfinite(b.bend_radius_mm))
                     throw GeometryError(where + "bend radius must exceed the pipe inner radius");
                 }},
             segment);
}

}  // namespace

SegmentKind kind_of(const Segment& segment) noexcept {
  return std::holds_alternative<Straight>(segment) ? SegmentKind::Straight : SegmentKind::Bend;
}

double segment_length(const Segment& segment) noexcept {
  return std::visit(overloaded{
                        [](const Straight& s) { return s.length_mm; },
                        [](const Bend& b) {
                          return b.bend_radius_mm * b.sweep_deg * std::numbers::pi / 180.0;
                        }},
                    segment);
}

std::string describe(const Segment& segment) {
  return std::visit(
      overloaded{[](const Straight& s) {
                   return std::string(s.gravity == GravityOrientation::Vertical
                                          ? "straight(vertical)"
                                          : "straight(horizontal)");
                 },
                 [](const Bend& b) {
                   if (!b.label.empty()) return b.label;
                   char buf[48];
                   std::snprintf(buf, sizeof buf, "bend(%g deg)", b.sweep_deg);
                   return std::string(buf);
                 }},
      segment);
}

PipeNetwork::PipeNetwork(PipeSpec spec, std::vector<Segment> segments)
    : spec_(spec), segments_(std::move(segments)) {
  if (!(spec_.inner_radius_mm > 0.0) || !std::isfinite(spec_.inner_radius_mm))
    throw GeometryError("pipe inner radius must be > 0");
  offsets_.reserve(segments_.size() + 1);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    validate(segments_[i], spec_, i);
    offsets_.push_back(offsets_.back() + segment_length(segments_[i]));
  }
}

double total_centerline_length(const PipeNetwork& network) noexcept {
  return network.start_of(network.size());
}

double robot_path_length(double pipe_length_mm, double robot_length_mm) {
  if (!(robot_length_mm >= 0.0) || !(robot_length_mm < pipe_length_mm))
    throw InvalidRobotLength("robot length must satisfy 0 <= L_R < pipe length");
  return pipe_length_mm - robot_length_mm;
}

double robot_path_length(const PipeNetwork& network, double robot_length_mm) {
  return robot_path_length(total_centerline_length(network), robot_length_mm);
}

ArcPosition locate(const PipeNetwork& network, double global_s_mm) {
  const double total = total_centerline_length(network);
  if (network.empty() || !(global_s_mm >= 0.0) || !(global_s_mm <= total))
    throw PositionError("arc-length " + std::to_string(global_s_mm) +
                        " mm outside network [0, " + std::to_string(total) + "]");
  if (global_s_mm == total) {
    const std::size_t last = network.size() - 1;
    return {last, total - network.start_of(last), global_s_mm};
  }
  // First offset strictly greater than s marks the end of the owning segment,
  // so a boundary value lands in the following segment.
  const auto& segs = network.segments();
  std::size_t lo = 0;
  std::size_t hi = segs.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (network.start_of(mid) <= global_s_mm)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, global_s_mm - network.start_of(lo), global_s_mm};
}

PipeNetwork reference_network() {
  return PipeNetwork(PipeSpec{137.9},
                     {Straight{550.0, GravityOrientation::Vertical},
                      Bend{418.77, 90.0, "elbow"},
                      Straight{350.0, GravityOrientation::Horizontal},
                      Bend{418.79, 180.0, "u-bend"},
                      Straight{150.0, GravityOrientation::Horizontal}});
}

}  // namespace pipeclimb
