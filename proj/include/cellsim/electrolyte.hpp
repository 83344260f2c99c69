// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cellsim/particle.hpp"  // StepStatus

namespace cellsim {

// Bulk electrolyte transport properties. Effective values inside porous media
// scale with porosity^bruggeman.
struct ElectrolyteParameters {
  double c_init = 1000.0;      // initial salt concentration (mol/m^3)
  double diffusivity = 0.0;    // bulk D_e (m^2/s)
  double conductivity = 0.0;   // bulk kappa (S/m)
  double transference = 0.0;   // cation transference number t_+^0
  double thermo_factor = 0.0;  // (1 - t_+^0)(1 + dln f/dln c), lumped constant
  double bruggeman = 1.5;      // porosity exponent
};

// Node-centered finite-volume grid of the salt concentration across the cell
// sandwich: negative electrode [0, l_neg), separator, positive electrode.
struct ElectrolyteGrid {
  std::vector<double> x;         // cell-center coordinates
  std::vector<double> dx;        // cell widths
  std::vector<double> porosity;  // per cell
  std::vector<double> conc;      // per cell
  int n_neg = 0, n_sep = 0, n_pos = 0;
  double l_neg = 0.0, l_sep = 0.0, l_pos = 0.0;
  double eps_neg = 0.0, eps_sep = 0.0, eps_pos = 0.0;

  static ElectrolyteGrid build(double l_neg, double eps_neg, double l_sep,
                               double eps_sep, double l_pos, double eps_pos,
                               int cells_per_region, double c0);

  int cells() const { return static_cast<int>(conc.size()); }
  // Porosity-weighted salt inventory per unit electrode area (mol/m^2).
  double total_salt() const;
  // Plain x-averages of the concentration over one electrode's thickness.
  double mean_conc_negative() const;
  double mean_conc_positive() const;
};

// One backward-Euler diffusion step with uniform volumetric source terms from
// the applied current density (A/m^2, negative = charging). Rejects (grid
// untouched) if any cell concentration would drop below zero.
StepStatus step_electrolyte(ElectrolyteGrid& grid, double current_density,
                            const ElectrolyteParameters& p, double dt);

// Electrolyte potential difference (positive side minus negative side) for the
// instantaneous concentration profile: lumped ohmic term plus a linearized
// diffusional term. T in kelvin.
double electrolyte_potential_drop(const ElectrolyteGrid& grid, double current_density,
                                  double temperature, const ElectrolyteParameters& p);

}  // namespace cellsim
