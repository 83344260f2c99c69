// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cellsim {

// Butler-Volmer intercalation kinetics.
//
// Exchange current density i0 (A/m^2) from the rate constant and local
// concentrations:
//   i0 = k0 * <c_e^alpha_a> * (c_max - c_se)^alpha_a * c_se^alpha_c
// where <c_e^alpha_a> is supplied by the caller (electrode-thickness average).
// c_se outside [0, c_max] is clamped.
double exchange_current_density(double k0, double ce_pow_avg, double c_se, double c_max,
                                double alpha_a, double alpha_c);

// Pore-wall flux (mol/(m^2 s)) from the surface overpotential (V):
//   j = (i0/F) * (exp(alpha_a F eta / RT) - exp(-alpha_c F eta / RT))
double bv_flux(double i0, double eta, double temperature, double alpha_a, double alpha_c);

// Inverse of bv_flux in eta. For symmetric charge transfer this is the closed
// form eta = (2RT/F) asinh(F j / (2 i0)); otherwise a guarded Newton solve.
// Throws SolverError when i0 == 0 and j != 0 (starved kinetics cannot carry
// a finite flux).
double solve_overpotential(double i0, double flux, double temperature,
                           double alpha_a = 0.5, double alpha_c = 0.5);

}  // namespace cellsim
