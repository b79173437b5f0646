#pragma once

#include <cmath>
#include <numbers>

#include "pipeclimb/errors.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

// Angles are measured about the pipe axis from the direction pointing at the
// bend centre, so a module at 0 deg rides the inside of the bend and one at
// 180 deg the outside.

/// (mu, mu+120, mu+240), each wrapped into [0, 360).
template <typename Scalar>
Triple<Scalar> module_angles(Scalar mu_deg) {
  return {normalize_deg(mu_deg), normalize_deg(mu_deg + Scalar(120)),
          normalize_deg(mu_deg + Scalar(240))};
}

template <typename Scalar>
void check_bend_geometry(Scalar bend_radius, Scalar pipe_radius) {
  if (!(pipe_radius >= Scalar(0)) || !(bend_radius > pipe_radius))
    throw GeometryError("bend radius must exceed pipe radius (R > r >= 0)");
}

/// No-slip speed of a track at angle mu_i in a bend: v * (R - r cos mu_i) / R.
template <typename Scalar>
Scalar track_speed_in_bend(Scalar v, Scalar bend_radius, Scalar pipe_radius, Scalar mu_i_deg) {
  using std::cos;
  check_bend_geometry(bend_radius, pipe_radius);
  return v * (bend_radius - pipe_radius * cos(deg_to_rad(mu_i_deg))) / bend_radius;
}

/// Relative no-slip demand of each module, (R - r cos mu_i) / R. Averages to 1.
template <typename Scalar>
Triple<Scalar> bend_demand(Scalar bend_radius, Scalar pipe_radius, Scalar mu_deg) {
  using std::cos;
  check_bend_geometry(bend_radius, pipe_radius);
  const Triple<Scalar> angles = module_angles(mu_deg);
  const Scalar ratio = pipe_radius / bend_radius;
  return angles.unaryExpr([ratio](Scalar a) { return Scalar(1) - ratio * cos(deg_to_rad(a)); });
}

template <typename Scalar>
Triple<Scalar> bend_track_speeds(Scalar v, Scalar bend_radius, Scalar pipe_radius, Scalar mu_deg) {
  return v * bend_demand(bend_radius, pipe_radius, mu_deg);
}

/// Sprocket rim speed in mm/s for an output speed in rpm: pi * D_s * w / 60.
template <typename Scalar>
constexpr Scalar linear_track_speed(Scalar omega_rpm, Scalar sprocket_diameter_mm) {
  return std::numbers::pi_v<Scalar> * sprocket_diameter_mm * omega_rpm / Scalar(60);
}

/// Inverse of linear_track_speed.
template <typename Scalar>
constexpr Scalar sprocket_rpm_for_speed(Scalar v, Scalar sprocket_diameter_mm) {
  return Scalar(60) * v / (std::numbers::pi_v<Scalar> * sprocket_diameter_mm);
}

}  // namespace pipeclimb
