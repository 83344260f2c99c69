// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cellsim/electrolyte.hpp"
#include "cellsim/parameters.hpp"
#include "cellsim/particle.hpp"

namespace cellsim {

// Full reduced-order plant state. Copyable; step_cell restores the previous
// state when a sub-solve rejects, so callers can simply retry with smaller dt.
struct CellState {
  std::vector<ParticleGrid> neg_particles;  // one grid per size class
  std::vector<ParticleGrid> pos_particles;
  ElectrolyteGrid electrolyte;
  double temperature = 0.0;         // lumped cell temperature (K)
  double charge_throughput = 0.0;   // integral of |I| dt (C)
  std::vector<double> neg_fluxes;   // pore-wall fluxes of the last step (mol/(m^2 s))
  std::vector<double> pos_fluxes;

  // Rest state at the given state of charge: uniform concentrations matched to
  // the stoichiometry windows, ambient temperature, zero fluxes.
  static CellState initialize(const CellParameters& p, double soc);

  // Volume-averaged negative electrode stoichiometry (size-fraction weighted).
  double neg_mean_stoich(const CellParameters& p) const;
  double pos_mean_stoich(const CellParameters& p) const;
  // State of charge normalized to the negative stoichiometry window.
  double soc(const CellParameters& p) const;
  // Total lithium per unit cell area in both solid phases (mol/m^2).
  double solid_lithium_per_area(const CellParameters& p) const;
};

// Result of distributing the applied current among the size classes of one
// electrode under a common solid potential.
struct FluxPartition {
  std::vector<double> flux;           // j_i (mol/(m^2 s))
  std::vector<double> overpotential;  // eta_i (V)
  std::vector<double> exchange;       // i0_i (A/m^2)
  std::vector<double> surface_conc;   // c_se_i used in the solve (mol/m^3)
  std::vector<double> surface_stoich;
  double potential = 0.0;  // common eta_i + U(x_i) + ASR_f*F*j_i (V)
};

// Thickness-averaged <c_e^alpha_a> over one electrode (trapezoid over the
// region's nodes, normalized by the node span).
double mean_ce_pow(const ElectrolyteGrid& grid, Electrode side, double alpha_a);

// Exchange current density of one size class from the current state.
double exchange_current(const CellState& s, const CellParameters& p, Electrode side,
                        int size);

// Solve the charge-balance / equal-potential system of one electrode for the
// given applied current density (A/m^2, negative = charging). Relative
// tolerance 1e-12 on the current balance. Throws SolverError on starvation or
// non-convergence.
FluxPartition partition_current(const CellState& s, const CellParameters& p,
                                Electrode side, double current_density);

// Terminal voltage for the applied current in amps (partitions both
// electrodes internally; pure function of the state).
double terminal_voltage(const CellState& s, const CellParameters& p, double current_A);

// One semi-implicit update of the lumped temperature: explicit heat sources
// (using the stored fluxes), implicit convective relaxation.
void step_temperature(CellState& s, const CellParameters& p, double current_A,
                      double voltage, double dt);

struct PlantStepOutputs {
  double voltage = 0.0;
  FluxPartition neg;
  FluxPartition pos;
};

// Advance the full plant by dt at constant applied current (amps, negative =
// charging). On rejection the state is unchanged. Outputs are taken at the
// kinetic snapshot used for the step.
StepStatus step_cell(CellState& s, const CellParameters& p, double current_A, double dt,
                     PlantStepOutputs* out = nullptr);

}  // namespace cellsim
