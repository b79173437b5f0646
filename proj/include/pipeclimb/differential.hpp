#pragma once

#include <cmath>

#include <Eigen/Core>

#include "pipeclimb/errors.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

/// Equal-output three-output differential: one input drives three two-output
/// differentials whose side gears feed three two-input differentials, one per
/// output. Only the composite ratio j/k is observable at the outputs.
template <typename Scalar>
struct DifferentialConfigT {
  Scalar gear_j = Scalar(1);    // ring-to-output ratio
  Scalar gear_k = Scalar(10);   // input-to-ring coupling
  Scalar input_rpm = Scalar(120);
  Scalar input_torque = Scalar(0);
  Scalar inertia_I1 = Scalar(0);
  Scalar inertia_I01 = Scalar(0);
  Scalar inertia_I03 = Scalar(0);
};

using DifferentialConfig = DifferentialConfigT<double>;

template <typename Scalar>
void validate(const DifferentialConfigT<Scalar>& cfg) {
  if (!(cfg.gear_k > Scalar(0)) || !(cfg.gear_j > Scalar(0)))
    throw AllocationError("differential gear ratios j and k must be > 0");
  if (!(cfg.input_rpm >= Scalar(0)))
    throw AllocationError("differential input speed must be >= 0");
}

template <typename Scalar>
struct OutputState {
  Triple<Scalar> speeds_rpm;
  Triple<Scalar> torques;
};

/// Ring speed of a two-output stage from its side-gear speeds:
/// k * (w01 + w02) / 2. The sides may differ; the ring sees their mean.
template <typename Scalar>
constexpr Scalar ring_speed_from_sides(Scalar k, Scalar w01, Scalar w02) {
  return k * (w01 + w02) / Scalar(2);
}

/// Speed of every output under equal (or zero) load: j * w_u / k.
template <typename Scalar>
constexpr Scalar equal_load_output_speed(const DifferentialConfigT<Scalar>& cfg) {
  return cfg.gear_j * cfg.input_rpm / cfg.gear_k;
}

/// Sum of the three output speeds, fixed by the input regardless of load split.
template <typename Scalar>
constexpr Scalar output_speed_sum(const DifferentialConfigT<Scalar>& cfg) {
  return Scalar(3) * equal_load_output_speed(cfg);
}

template <typename Scalar>
constexpr Scalar steady_state_output_torque(const DifferentialConfigT<Scalar>& cfg) {
  return cfg.gear_k * cfg.input_torque / (Scalar(3) * cfg.gear_j);
}

/// Output torque with the two internal gear accelerations (rad/s^2) loading
/// the stage: k*tau_u/(3j) - (I01*a07 + I03*a08)/j.
template <typename Scalar>
constexpr Scalar dynamic_output_torque(const DifferentialConfigT<Scalar>& cfg, Scalar wdot07,
                                       Scalar wdot08) {
  return steady_state_output_torque(cfg) -
         (cfg.inertia_I01 * wdot07 + cfg.inertia_I03 * wdot08) / cfg.gear_j;
}

/// Symmetric form where both side gears share inertia I1 and acceleration:
/// k*tau_u/(3j) - 2*I1*a1/j.
template <typename Scalar>
constexpr Scalar symmetric_output_torque(const DifferentialConfigT<Scalar>& cfg, Scalar wdot1) {
  return steady_state_output_torque(cfg) - Scalar(2) * cfg.inertia_I1 * wdot1 / cfg.gear_j;
}

/// Passive speed split across the outputs. Speeds follow the demand weights
/// and always sum to 3*j*w_u/k. Throws AllocationError on a weight that is
/// not strictly positive and finite.
template <typename Derived>
Triple<typename Derived::Scalar> allocate_output_speeds(
    const DifferentialConfigT<typename Derived::Scalar>& cfg,
    const Eigen::MatrixBase<Derived>& demand) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3)
  for (Eigen::Index i = 0; i < 3; ++i) {
    if (!(demand(i) > Scalar(0)) || !std::isfinite(demand(i)))
      throw AllocationError("demand weights must be positive and finite");
  }
  // Equal weights short-circuit so the equal-load case is exact.
  if (demand(0) == demand(1) && demand(1) == demand(2))
    return Triple<Scalar>::Constant(equal_load_output_speed(cfg));
  return demand * (output_speed_sum(cfg) / demand.sum());
}

/// Steady-state outputs under equal load.
template <typename Scalar>
OutputState<Scalar> equal_load_outputs(const DifferentialConfigT<Scalar>& cfg) {
  return {Triple<Scalar>::Constant(equal_load_output_speed(cfg)),
          Triple<Scalar>::Constant(steady_state_output_torque(cfg))};
}

}  // namespace pipeclimb
