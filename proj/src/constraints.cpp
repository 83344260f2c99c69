// SPDX-License-Identifier: Apache-2.0
#include "cellsim/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/kinetics.hpp"

namespace cellsim {

void ConstraintLimits::validate() const {
  if (!(stress_max > 0)) throw ConfigError("limits: stress bound > 0");
  if (!(temperature_max > 0)) throw ConfigError("limits: temperature bound > 0 K");
  if (!(voltage_max > 0)) throw ConfigError("limits: voltage bound > 0");
  if (!(current_max <= 0))
    throw ConfigError("limits: charging current floor must be <= 0 (charging is negative)");
}

ConstraintSignals make_signals(double eta_plating, double stress, double temperature,
                               double voltage, const ConstraintLimits& limits) {
  ConstraintSignals s;
  s.eta_plating = eta_plating;
  s.stress = stress;
  s.temperature = temperature;
  s.voltage = voltage;
  s.e_voltage = limits.voltage_max - voltage;
  s.e_plating = eta_plating - limits.eta_plating_min;
  s.e_stress = limits.stress_max - stress;
  s.e_temperature = limits.temperature_max - temperature;
  const bool gate = voltage < limits.voltage_max;
  s.plating_active = gate && eta_plating < limits.eta_plating_min;
  s.stress_active = gate && stress > limits.stress_max;
  s.temperature_active = gate && temperature > limits.temperature_max;
  return s;
}

double plating_potential(const CellState& s, const CellParameters& p) {
  double worst = 0.0;
  bool first = true;
  const double ce_pow = mean_ce_pow(s.electrolyte, Electrode::negative, p.alpha_a);
  for (int i = 0; i < p.neg.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    const ParticleGrid& grid = s.neg_particles[k];
    double c_se = grid.surface_concentration();
    double x_se = c_se / p.neg.c_maxes[k];
    double j = s.neg_fluxes[k];
    double eta = 0.0;
    if (j != 0.0) {
      double i0 = exchange_current_density(p.neg.rate_constant, ce_pow, c_se,
                                           p.neg.c_maxes[k], p.alpha_a, p.alpha_c);
      eta = solve_overpotential(i0, j, s.temperature, p.alpha_a, p.alpha_c);
    }
    double value = eta + p.neg.ocp(x_se);
    if (first || value < worst) worst = value;
    first = false;
  }
  return worst;
}

double plating_current(double eta_plating, double temperature, double i0_plating) {
  const double alpha_c = 0.5;
  return -i0_plating / kFaraday *
         std::exp(-alpha_c * kFaraday * eta_plating / (kGasConstant * temperature));
}

ConstraintSignals evaluate_constraints(const CellState& s, const CellParameters& p,
                                       const MechanicalParameters& mech, double voltage,
                                       const ConstraintLimits& limits) {
  double eta_pl = plating_potential(s, p);
  double sigma = surface_stress_signal(s.neg_particles, mech);
  return make_signals(eta_pl, sigma, s.temperature, voltage, limits);
}

}  // namespace cellsim
