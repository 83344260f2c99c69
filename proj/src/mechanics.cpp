// SPDX-License-Identifier: Apache-2.0
#include "cellsim/mechanics.hpp"

#include <cmath>

#include "cellsim/errors.hpp"

namespace cellsim {

void MechanicalParameters::validate() const {
  if (!(youngs_modulus > 0)) throw ConfigError("mechanics: Young's modulus > 0");
  if (!(poissons_ratio > 0 && poissons_ratio < 0.5))
    throw ConfigError("mechanics: Poisson's ratio in (0, 0.5)");
  if (strain.empty()) throw ConfigError("mechanics: strain table present");
}

double volumetric_strain(double conc, double c_max, const Table1D& strain) {
  return strain(conc / c_max);
}

namespace {

// Cumulative moment M_k = int_0^{rho_k} rho^2 dv(rho) drho with dv piecewise
// linear between the knots; each interval is integrated analytically so that
// a constant dv yields exactly dv * rho^3 / 3.
std::vector<double> cumulative_moment(const std::vector<double>& rho,
                                      const std::vector<double>& dv) {
  const std::size_t n = rho.size();
  if (n < 2 || dv.size() != n) throw ConfigError("stress: knot arrays invalid");
  if (rho.front() != 0.0) throw ConfigError("stress: first knot must be r = 0");
  std::vector<double> m(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double r1 = rho[k - 1], r2 = rho[k];
    if (!(r2 > r1)) throw ConfigError("stress: knots must be strictly increasing");
    double b = (dv[k] - dv[k - 1]) / (r2 - r1);
    double a = dv[k - 1] - b * r1;
    double cube = r2 * r2 * r2 - r1 * r1 * r1;
    double quart = r2 * r2 * r2 * r2 - r1 * r1 * r1 * r1;
    m[k] = m[k - 1] + a * cube / 3.0 + b * quart / 4.0;
  }
  return m;
}

}  // namespace

StressProfile stress_profile_from_strain(const std::vector<double>& rho,
                                         const std::vector<double>& dv, double youngs,
                                         double poisson) {
  const std::size_t n = rho.size();
  const std::vector<double> m = cumulative_moment(rho, dv);
  const double radius = rho.back();
  const double mean = m.back() / (radius * radius * radius);  // (1/R^3) int_0^R
  const double pref = 2.0 * youngs / (3.0 * (1.0 - poisson));

  StressProfile out;
  out.r = rho;
  out.radial.resize(n);
  out.tangential.resize(n);
  out.hydrostatic.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double local = k == 0 ? dv[0] / 3.0 : m[k] / (rho[k] * rho[k] * rho[k]);
    out.radial[k] = pref * (mean - local);
    out.tangential[k] = 0.5 * pref * (2.0 * mean + local - dv[k]);
    out.hydrostatic[k] = (out.radial[k] + 2.0 * out.tangential[k]) / 3.0;
  }
  return out;
}

std::vector<double> hydrostatic_stress_direct(const std::vector<double>& rho,
                                              const std::vector<double>& dv, double youngs,
                                              double poisson) {
  const std::vector<double> m = cumulative_moment(rho, dv);
  const double radius = rho.back();
  const double mean = m.back() / (radius * radius * radius);
  const double pref = 2.0 * youngs / (3.0 * (1.0 - poisson));
  std::vector<double> out(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) out[k] = pref * (mean - dv[k] / 3.0);
  return out;
}

std::vector<double> radial_displacement_from_strain(const std::vector<double>& rho,
                                                    const std::vector<double>& dv,
                                                    double poisson) {
  const std::vector<double> m = cumulative_moment(rho, dv);
  const double radius = rho.back();
  const double mean = m.back() / (radius * radius * radius);
  std::vector<double> u(rho.size());
  u[0] = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    u[k] = (1.0 + poisson) / (1.0 - poisson) * m[k] / (3.0 * rho[k] * rho[k]) +
           (1.0 - 2.0 * poisson) / (1.0 - poisson) * 2.0 * rho[k] * mean / 3.0;
  }
  return u;
}

void strain_knots(const ParticleGrid& grid, const Table1D& strain,
                  std::vector<double>& rho, std::vector<double>& dv) {
  const int n = grid.shells();
  rho.clear();
  dv.clear();
  rho.reserve(static_cast<std::size_t>(n) + 2);
  dv.reserve(static_cast<std::size_t>(n) + 2);
  rho.push_back(0.0);
  dv.push_back(volumetric_strain(grid.conc.front(), grid.c_max, strain));
  for (int k = 0; k < n; ++k) {
    rho.push_back(grid.center(k));
    dv.push_back(volumetric_strain(grid.conc[static_cast<std::size_t>(k)], grid.c_max, strain));
  }
  rho.push_back(grid.radius);
  dv.push_back(volumetric_strain(grid.surface_concentration(), grid.c_max, strain));
}

StressProfile stress_profile(const ParticleGrid& grid, const MechanicalParameters& m) {
  std::vector<double> rho, dv;
  strain_knots(grid, m.strain, rho, dv);
  return stress_profile_from_strain(rho, dv, m.youngs_modulus, m.poissons_ratio);
}

std::vector<double> radial_displacement(const ParticleGrid& grid,
                                        const MechanicalParameters& m) {
  std::vector<double> rho, dv;
  strain_knots(grid, m.strain, rho, dv);
  return radial_displacement_from_strain(rho, dv, m.poissons_ratio);
}

double surface_stress_signal(const std::vector<ParticleGrid>& neg_particles,
                             const MechanicalParameters& m) {
  double worst = 0.0;
  for (const auto& grid : neg_particles) {
    double s = std::abs(stress_profile(grid, m).surface_hydrostatic());
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace cellsim
