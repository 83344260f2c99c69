// SPDX-License-Identifier: Apache-2.0
#include "cellsim/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"

namespace cellsim {

double exchange_current_density(double k0, double ce_pow_avg, double c_se, double c_max,
                                double alpha_a, double alpha_c) {
  double cs = std::clamp(c_se, 0.0, c_max);
  return k0 * ce_pow_avg * std::pow(c_max - cs, alpha_a) * std::pow(cs, alpha_c);
}

double bv_flux(double i0, double eta, double temperature, double alpha_a, double alpha_c) {
  const double f = kFaraday / (kGasConstant * temperature);
  return i0 / kFaraday * (std::exp(alpha_a * f * eta) - std::exp(-alpha_c * f * eta));
}

double solve_overpotential(double i0, double flux, double temperature, double alpha_a,
                           double alpha_c) {
  if (flux == 0.0) return 0.0;
  if (i0 <= 0.0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "starved kinetics: i0 = %.3e A/m^2 cannot carry flux %.3e mol/(m^2 s)",
                  i0, flux);
    throw SolverError(msg);
  }
  const double f = kFaraday / (kGasConstant * temperature);
  if (alpha_a == alpha_c) {
    return 2.0 / (alpha_a + alpha_c) / f * std::asinh(kFaraday * flux / (2.0 * i0));
  }

  // Asymmetric transfer: Newton with bisection fallback on a bracketing
  // interval. bv_flux is strictly increasing in eta.
  double lo = -1.0, hi = 1.0;
  while (bv_flux(i0, lo, temperature, alpha_a, alpha_c) > flux) lo *= 2.0;
  while (bv_flux(i0, hi, temperature, alpha_a, alpha_c) < flux) hi *= 2.0;
  double eta = std::asinh(kFaraday * flux / (2.0 * i0)) / f;  // symmetric guess
  for (int it = 0; it < 100; ++it) {
    double r = bv_flux(i0, eta, temperature, alpha_a, alpha_c) - flux;
    if (r > 0.0) hi = eta; else lo = eta;
    double drdeta = i0 / kFaraday * f *
                    (alpha_a * std::exp(alpha_a * f * eta) +
                     alpha_c * std::exp(-alpha_c * f * eta));
    double next = eta - r / drdeta;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - eta) < 1e-15 * std::max(1.0, std::abs(eta))) return next;
    eta = next;
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "overpotential solve stalled: i0 = %.3e, j = %.3e, bracket [%g, %g]", i0,
                flux, lo, hi);
  throw SolverError(msg);
}

}  // namespace cellsim
