// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace cellsim {

enum class StepStatus { ok, rejected };

// Finite-volume radial grid of one representative spherical particle.
// Shell faces are uniformly spaced; concentrations live at shell centers.
// Sign convention: pore-wall flux j > 0 carries lithium OUT of the solid,
// i.e. the surface boundary condition is D * dc/dr(R) = -j.
struct ParticleGrid {
  double radius = 0.0;       // R_p (m)
  double c_max = 0.0;        // saturation concentration (mol/m^3)
  double diffusivity = 0.0;  // D_s (m^2/s)
  std::vector<double> conc;  // shell-center concentrations, index 0 at the center
  double last_flux = 0.0;    // pore-wall flux that produced `conc` (mol/(m^2 s))

  static ParticleGrid uniform(double radius, double c_max, double diffusivity,
                              int shells, double c0);

  int shells() const { return static_cast<int>(conc.size()); }
  double shell_width() const { return radius / shells(); }
  double center(int k) const { return (k + 0.5) * shell_width(); }

  // Exact volume average over the finite-volume shells.
  double mean_concentration() const;
  // Moles of lithium in the sphere (includes the 4*pi factor).
  double total_lithium() const;
  // Concentration at r = R, reconstructed from the outermost shell and the
  // boundary gradient implied by last_flux. Not clamped to [0, c_max].
  double surface_concentration() const;
};

// One backward-Euler diffusion step with the surface flux held constant over dt.
// If any shell would leave [0, c_max] by more than bound_tol * c_max the step
// is rejected and the grid is left untouched (caller should reduce dt).
StepStatus step_solid_diffusion(ParticleGrid& grid, double surface_flux, double dt,
                                double bound_tol = 1e-9);

}  // namespace cellsim
