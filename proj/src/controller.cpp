// SPDX-License-Identifier: Apache-2.0
#include "cellsim/controller.hpp"

#include <algorithm>

#include "cellsim/errors.hpp"

namespace cellsim {

void ControllerGains::validate() const {
  const double* all[] = {&k_i_voltage, &k_i_plating,     &k_i_stress,    &k_p_stress,
                         &k_i_temperature, &k_p_temperature, &k_anti_windup};
  for (const double* g : all) {
    if (!(*g >= 0)) throw ConfigError("gains must be >= 0");
  }
  if (!(k_i_voltage > 0)) throw ConfigError("voltage gain must be > 0");
}

double cccv_step(ControllerState& st, double voltage, const ConstraintLimits& limits,
                 const ControllerGains& g, double dt) {
  const double e_v = limits.voltage_max - voltage;
  const double windup = st.integrator - std::max(limits.current_max, st.integrator);
  st.integrator -= dt * (g.k_i_voltage * e_v + g.k_anti_windup * windup);
  st.applied = std::max(st.integrator, limits.current_max);
  return st.applied;
}

double cccvest_step(ControllerState& st, const ConstraintSignals& sig,
                    const ConstraintLimits& limits, const ControllerGains& g, double dt) {
  const double windup = st.integrator - std::max(limits.current_max, st.integrator);
  // Inactive channels contribute an exact 0.0 so the accumulation below is
  // bit-identical to cccv_step when every gate is closed.
  const double plating_term = sig.plating_active ? g.k_i_plating * sig.e_plating : 0.0;
  const double stress_term = sig.stress_active ? g.k_i_stress * sig.e_stress : 0.0;
  const double temp_term =
      sig.temperature_active ? g.k_i_temperature * sig.e_temperature : 0.0;
  st.integrator -= dt * (g.k_i_voltage * sig.e_voltage + plating_term + stress_term +
                         temp_term + g.k_anti_windup * windup);
  // Gated proportional action enters the output only, in the direction that
  // opposes the violation (a violated channel has a negative error, so the
  // contribution -K_p * e is positive: it pulls the charging current toward
  // zero and damps the limit-riding oscillation).
  const double prop = (sig.stress_active ? -g.k_p_stress * sig.e_stress : 0.0) +
                      (sig.temperature_active ? -g.k_p_temperature * sig.e_temperature : 0.0);
  st.applied = std::max(st.integrator + prop, limits.current_max);
  return st.applied;
}

}  // namespace cellsim
