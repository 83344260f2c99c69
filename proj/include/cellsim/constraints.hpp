// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cellsim/cell_model.hpp"
#include "cellsim/mechanics.hpp"

namespace cellsim {

// Operating limits shared by the plant report and the controllers.
// Sign convention: current_max is the charging current floor and is <= 0.
struct ConstraintLimits {
  double eta_plating_min = 0.0;   // eta_pl,d (V)
  double stress_max = 0.0;        // sigma_d (Pa)
  double temperature_max = 0.0;   // T_d (K)
  double voltage_max = 0.0;       // V_d (V)
  double current_max = 0.0;       // I_max (A), <= 0

  void validate() const;
};

// Instantaneous values, control errors and activation flags of the three
// degradation channels. Activation requires both the violation and the
// voltage gate V < V_d; ties are inactive (strict inequalities).
struct ConstraintSignals {
  double eta_plating = 0.0;   // V
  double stress = 0.0;        // Pa, magnitude
  double temperature = 0.0;   // K
  double voltage = 0.0;       // V
  double e_voltage = 0.0;     // V_d - V
  double e_plating = 0.0;     // eta_pl - eta_pl,d
  double e_stress = 0.0;      // sigma_d - sigma
  double e_temperature = 0.0; // T_d - T
  bool plating_active = false;
  bool stress_active = false;
  bool temperature_active = false;
};

// Errors and gates from raw signal values (pure; used by evaluate_constraints
// and directly testable against arbitrary signal combinations).
ConstraintSignals make_signals(double eta_plating, double stress, double temperature,
                               double voltage, const ConstraintLimits& limits);

// Lithium-plating side-reaction overpotential: the solid-electrolyte potential
// difference minus the film drop at the negative electrode, evaluated per size
// class from the stored pore-wall fluxes as eta_j + U(x_se,j); returns the
// minimum (most critical) class.
double plating_potential(const CellState& s, const CellParameters& p);

// Tafel estimate of the plating side-reaction flux (mol/(m^2 s), <= 0).
// Diagnostic only; never fed back into the charge balance.
double plating_current(double eta_plating, double temperature, double i0_plating);

// All controller inputs from the plant state and the terminal voltage of the
// sample. The stress signal is the worst negative-electrode surface value.
ConstraintSignals evaluate_constraints(const CellState& s, const CellParameters& p,
                                       const MechanicalParameters& mech, double voltage,
                                       const ConstraintLimits& limits);

}  // namespace cellsim
