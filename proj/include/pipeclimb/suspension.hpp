#pragma once

#include <cmath>

#include "pipeclimb/pipe_geometry.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

/// Tilt reached by a fully compressed end against a free one.
inline double full_travel_tilt_deg(double max_compression_mm, double linkage_span_mm) {
  return rad_to_deg(std::atan(max_compression_mm / linkage_span_mm));
}

struct SpringConfig {
  double preload_mm = 1.25;
  double bend_extra_mm = 1.5;
  double max_compression_mm = 16.0;
  double linkage_span_mm = 100.0;
  double phi_max_deg = full_travel_tilt_deg(16.0, 100.0);
};

/// Throws OverCompression when preload exceeds the travel limit, and
/// GeometryError for negative or non-finite parameters.
void validate(const SpringConfig& cfg);

/// Radial compression of a module at module_angle_deg in the given segment.
/// Straight pipe holds the preload; in a bend the extra compression scales
/// with |cos(angle)|, full at the inner (0 deg) and outer (180 deg) positions.
/// Throws OverCompression above max_compression_mm.
[[nodiscard]] double compression_at(SegmentKind kind, double module_angle_deg,
                                    const SpringConfig& cfg);

struct AsymmetricCheck {
  bool pass = false;
  double tilt_deg = 0.0;
};

/// Tilt implied by unequal front/rear compression across the linkage span.
/// Fails when the tilt exceeds phi_max_deg or either end exceeds the limit.
[[nodiscard]] AsymmetricCheck check_asymmetric(double front_mm, double rear_mm,
                                               const SpringConfig& cfg);

}  // namespace pipeclimb
