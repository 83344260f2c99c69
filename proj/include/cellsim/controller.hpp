// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cellsim/constraints.hpp"

namespace cellsim {

// Integral gains in SI signal units (stress errors in Pa, temperatures in K).
struct ControllerGains {
  double k_i_voltage = 0.0;      // A/(V s)
  double k_i_plating = 0.0;      // A/(V s)
  double k_i_stress = 0.0;       // A/(Pa s)
  double k_p_stress = 0.0;       // A/Pa
  double k_i_temperature = 0.0;  // A/(K s)
  double k_p_temperature = 0.0;  // A/K
  double k_anti_windup = 0.0;    // 1/s

  void validate() const;
};

// Saturated-integrator charge controller state. `integrator` is the integral
// term I of the control law; `applied` is the last saturated output
// max(I + proportional terms, I_max).
struct ControllerState {
  double integrator = 0.0;  // A
  double applied = 0.0;     // A

  static ControllerState start(const ConstraintLimits& limits) {
    return {limits.current_max, limits.current_max};
  }
};

// One forward-Euler step of the CC-CV law: integrate the voltage error with
// anti-windup against the current floor, then saturate. Returns the applied
// current (== state.applied).
double cccv_step(ControllerState& st, double voltage, const ConstraintLimits& limits,
                 const ControllerGains& g, double dt);

// One step of the constraint-aware law: CC-CV plus gated integral channels for
// plating / stress / temperature and gated proportional terms on the output.
// With all aging channels inactive (or their gains zero) the arithmetic is
// bit-identical to cccv_step.
double cccvest_step(ControllerState& st, const ConstraintSignals& sig,
                    const ConstraintLimits& limits, const ControllerGains& g, double dt);

}  // namespace cellsim
