// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cellsim/electrolyte.hpp"
#include "cellsim/table.hpp"

namespace cellsim {

enum class Electrode { negative, positive };

// One porous electrode. Size-class vectors run in parallel; fractions are the
// volume shares of the active material held by each representative particle
// size and must sum to 1.
struct ElectrodeParameters {
  double thickness = 0.0;        // m
  double active_fraction = 0.0;  // eps_s, solid volume fraction
  double porosity = 0.0;         // eps_e, electrolyte volume fraction
  double rate_constant = 0.0;    // k0 (A m^2.5 / mol^1.5)
  double film_resistance = 0.0;  // ASR_f (ohm m^2)
  std::vector<double> radii;          // R_p per size class (m)
  std::vector<double> fractions;      // zeta per size class
  std::vector<double> diffusivities;  // D_s per size class (m^2/s)
  std::vector<double> c_maxes;        // saturation conc per size class (mol/m^3)
  Table1D ocp;      // open-circuit potential U(x) vs stoichiometry
  Table1D entropy;  // dU/dT(x) (V/K)
  double stoich_soc0 = 0.0;    // stoichiometry at 0 % state of charge
  double stoich_soc100 = 0.0;  // stoichiometry at 100 % state of charge

  int size_classes() const { return static_cast<int>(radii.size()); }
  // Specific interfacial area of one size class, a = 3 zeta eps_s / R (1/m).
  double specific_area(int size) const {
    return 3.0 * fractions[static_cast<std::size_t>(size)] * active_fraction /
           radii[static_cast<std::size_t>(size)];
  }
};

struct ThermalParameters {
  double heat_capacity_area = 0.0;  // rho*C_p*l_c lumped per cell area (J/(m^2 K))
  double h_conv = 0.0;              // surface heat transfer coefficient (W/(m^2 K))
  double t_ambient = 0.0;           // K
};

struct CellParameters {
  ElectrodeParameters neg;
  ElectrodeParameters pos;
  ElectrolyteParameters elec;
  ThermalParameters thermal;
  double separator_thickness = 0.0;  // m
  double separator_porosity = 0.0;
  double area = 0.0;                 // total active electrode area (m^2)
  double capacity_Ah = 0.0;          // nominal capacity, defines the C rate
  double alpha_a = 0.5;
  double alpha_c = 0.5;
  double plating_exchange_current = 1.0;  // i0_pl (A/m^2), diagnostic only
  int radial_shells = 30;
  int electrolyte_cells = 20;  // per region

  double current_density(double amps) const { return amps / area; }
  // Capacity implied by the negative electrode stoichiometry window (Ah);
  // should agree with capacity_Ah for coulomb-consistent state of charge.
  double derived_capacity_Ah() const;
  // Throws ConfigError on the first violated range or consistency check.
  void validate() const;
};

}  // namespace cellsim
