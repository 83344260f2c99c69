// SPDX-License-Identifier: Apache-2.0
#include "cellsim/particle.hpp"

#include <cmath>
#include <numbers>

#include "cellsim/errors.hpp"
#include "cellsim/tridiag.hpp"

namespace cellsim {

ParticleGrid ParticleGrid::uniform(double radius, double c_max, double diffusivity,
                                   int shells, double c0) {
  if (radius <= 0.0 || c_max <= 0.0 || diffusivity <= 0.0 || shells < 2)
    throw ConfigError("particle grid: radius, c_max, D and shell count must be positive");
  ParticleGrid g;
  g.radius = radius;
  g.c_max = c_max;
  g.diffusivity = diffusivity;
  g.conc.assign(static_cast<std::size_t>(shells), c0);
  return g;
}

namespace {

// Shell volume between faces k and k+1, without the 4*pi factor.
inline double shell_volume(double h, int k) {
  double f0 = k * h;
  double f1 = (k + 1) * h;
  return (f1 * f1 * f1 - f0 * f0 * f0) / 3.0;
}

}  // namespace

double ParticleGrid::mean_concentration() const {
  const int n = shells();
  const double h = shell_width();
  double sum = 0.0, vol = 0.0;
  for (int k = 0; k < n; ++k) {
    double v = shell_volume(h, k);
    sum += v * conc[static_cast<std::size_t>(k)];
    vol += v;
  }
  return sum / vol;
}

double ParticleGrid::total_lithium() const {
  const int n = shells();
  const double h = shell_width();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += shell_volume(h, k) * conc[static_cast<std::size_t>(k)];
  return 4.0 * std::numbers::pi * sum;
}

double ParticleGrid::surface_concentration() const {
  // c(R) ~ c_{N-1} + (h/2) * dc/dr(R), with D * dc/dr(R) = -last_flux.
  const double h = shell_width();
  return conc.back() - 0.5 * h * last_flux / diffusivity;
}

StepStatus step_solid_diffusion(ParticleGrid& grid, double surface_flux, double dt,
                                double bound_tol) {
  const int n = grid.shells();
  const double h = grid.shell_width();
  const double d = grid.diffusivity;

  // Face areas (r_face^2, 4*pi dropped consistently) and shell volumes.
  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  for (int k = 0; k < n; ++k) {
    const double v = shell_volume(h, k);
    const double a_in = (k * h) * (k * h);                // face below shell k
    const double a_out = ((k + 1) * h) * ((k + 1) * h);   // face above shell k
    const double w_in = (k > 0) ? d * a_in / h : 0.0;
    const double w_out = (k < n - 1) ? d * a_out / h : 0.0;
    lower[static_cast<std::size_t>(k)] = -dt * w_in;
    upper[static_cast<std::size_t>(k)] = -dt * w_out;
    diag[static_cast<std::size_t>(k)] = v + dt * (w_in + w_out);
    rhs[static_cast<std::size_t>(k)] = v * grid.conc[static_cast<std::size_t>(k)];
    if (k == n - 1) rhs[static_cast<std::size_t>(k)] += dt * a_out * (-surface_flux);
  }
  solve_tridiagonal(lower, diag, upper, rhs);

  const double tol = bound_tol * grid.c_max;
  for (double c : rhs) {
    if (!(c >= -tol && c <= grid.c_max + tol)) return StepStatus::rejected;
    if (!std::isfinite(c)) return StepStatus::rejected;
  }
  grid.conc = std::move(rhs);
  grid.last_flux = surface_flux;
  return StepStatus::ok;
}

}  // namespace cellsim
