#include "pipeclimb/suspension.hpp"

#include <cmath>
#include <string>

#include "pipeclimb/errors.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

void validate(const SpringConfig& cfg) {
  const bool finite = std::isfinite(cfg.preload_mm) && std::isfinite(cfg.bend_extra_mm) &&
                      std::isfinite(cfg.max_compression_mm) &&
                      std::isfinite(cfg.linkage_span_mm) && std::isfinite(cfg.phi_max_deg);
  if (!finite || cfg.preload_mm < 0.0 || cfg.bend_extra_mm < 0.0 ||
      cfg.max_compression_mm <= 0.0 || cfg.linkage_span_mm <= 0.0 || cfg.phi_max_deg < 0.0)
    throw GeometryError("spring parameters must be finite and non-negative");
  if (cfg.preload_mm > cfg.max_compression_mm)
    throw OverCompression("preload " + std::to_string(cfg.preload_mm) +
                          " mm exceeds maximum compression " +
                          std::to_string(cfg.max_compression_mm) + " mm");
}

double compression_at(SegmentKind kind, double module_angle_deg, const SpringConfig& cfg) {
  validate(cfg);
  double c = cfg.preload_mm;
  if (kind == SegmentKind::Bend)
    c += cfg.bend_extra_mm * std::abs(std::cos(deg_to_rad(module_angle_deg)));
  if (c > cfg.max_compression_mm)
    throw OverCompression("compression " + std::to_string(c) + " mm exceeds maximum " +
                          std::to_string(cfg.max_compression_mm) + " mm");
  return c;
}

AsymmetricCheck check_asymmetric(double front_mm, double rear_mm, const SpringConfig& cfg) {
  AsymmetricCheck out;
  out.tilt_deg = rad_to_deg(std::atan(std::abs(front_mm - rear_mm) / cfg.linkage_span_mm));
  const bool in_range = front_mm >= 0.0 && rear_mm >= 0.0 &&
                        front_mm <= cfg.max_compression_mm && rear_mm <= cfg.max_compression_mm;
  out.pass = in_range && out.tilt_deg <= cfg.phi_max_deg;
  return out;
}

}  // namespace pipeclimb
