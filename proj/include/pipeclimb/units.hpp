#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace pipeclimb {

/// Per-module triple (A, B, C). Module A sits at the orientation angle,
/// B and C follow at +120 and +240 degrees.
template <typename Scalar>
using Triple = Eigen::Matrix<Scalar, 3, 1>;

/// Linear track speeds (v_tA, v_tB, v_tC) in mm/s.
using TrackSpeeds = Triple<double>;

enum Module : Eigen::Index { kModuleA = 0, kModuleB = 1, kModuleC = 2 };

template <typename Scalar>
constexpr Scalar kRpmToRadPerSec = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(60);

template <typename Scalar>
constexpr Scalar rpm_to_rad_per_sec(Scalar rpm) {
  return rpm * kRpmToRadPerSec<Scalar>;
}

template <typename Scalar>
constexpr Scalar rad_per_sec_to_rpm(Scalar w) {
  return w / kRpmToRadPerSec<Scalar>;
}

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

/// Wraps an angle in degrees into [0, 360).
template <typename Scalar>
Scalar normalize_deg(Scalar deg) {
  using std::fmod;
  Scalar out = fmod(deg, Scalar(360));
  if (out < Scalar(0)) out += Scalar(360);
  // fmod of a tiny negative can round back up to exactly 360.
  if (out >= Scalar(360)) out -= Scalar(360);
  return out;
}

}  // namespace pipeclimb
