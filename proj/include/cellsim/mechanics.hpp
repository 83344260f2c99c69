// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cellsim/parameters.hpp"
#include "cellsim/particle.hpp"
#include "cellsim/table.hpp"

namespace cellsim {

struct MechanicalParameters {
  double youngs_modulus = 0.0;  // E (Pa)
  double poissons_ratio = 0.0;  // nu
  Table1D strain;               // volumetric lithiation strain dV(x) vs stoichiometry

  void validate() const;
};

// Volumetric strain of the host lattice at solid concentration c.
double volumetric_strain(double conc, double c_max, const Table1D& strain);

// Elastic fields of a free-standing sphere with a radial strain profile
// dv(rho) given at strictly increasing knots rho (rho.front() == 0,
// rho.back() == R). All integrals treat dv as piecewise linear and integrate
// the rho^2 moment exactly, so a uniform profile is stress-free to roundoff.
struct StressProfile {
  std::vector<double> r;
  std::vector<double> radial;       // sigma_r (Pa)
  std::vector<double> tangential;   // sigma_t (Pa)
  std::vector<double> hydrostatic;  // (sigma_r + 2 sigma_t) / 3 (Pa)

  double surface_hydrostatic() const { return hydrostatic.back(); }
};

StressProfile stress_profile_from_strain(const std::vector<double>& rho,
                                         const std::vector<double>& dv, double youngs,
                                         double poisson);

// Hydrostatic stress by the direct formula
//   sigma_h(r) = 2E/(3(1-nu)) * ( (1/R^3) int_0^R rho^2 dv drho - dv(r)/3 ),
// an independent algebraic route to StressProfile::hydrostatic.
std::vector<double> hydrostatic_stress_direct(const std::vector<double>& rho,
                                              const std::vector<double>& dv, double youngs,
                                              double poisson);

// Radial displacement u(rho_k) of the same problem (u(0) = 0, sigma_r(R) = 0).
std::vector<double> radial_displacement_from_strain(const std::vector<double>& rho,
                                                    const std::vector<double>& dv,
                                                    double poisson);

// Wrappers that build the knot/strain arrays from a particle grid: shell
// centers augmented with the r = 0 center value and the flux-reconstructed
// surface value.
void strain_knots(const ParticleGrid& grid, const Table1D& strain,
                  std::vector<double>& rho, std::vector<double>& dv);
StressProfile stress_profile(const ParticleGrid& grid, const MechanicalParameters& m);
std::vector<double> radial_displacement(const ParticleGrid& grid,
                                        const MechanicalParameters& m);

// Largest surface hydrostatic stress magnitude over the negative electrode
// size classes (Pa, >= 0); the mechanical signal fed to the controller.
double surface_stress_signal(const std::vector<ParticleGrid>& neg_particles,
                             const MechanicalParameters& m);

}  // namespace cellsim
