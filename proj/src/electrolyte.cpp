// SPDX-License-Identifier: Apache-2.0
#include "cellsim/electrolyte.hpp"

#include <cmath>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/tridiag.hpp"

namespace cellsim {

ElectrolyteGrid ElectrolyteGrid::build(double l_neg, double eps_neg, double l_sep,
                                       double eps_sep, double l_pos, double eps_pos,
                                       int cells_per_region, double c0) {
  if (l_neg <= 0 || l_sep <= 0 || l_pos <= 0 || cells_per_region < 2)
    throw ConfigError("electrolyte grid: thicknesses and cell count must be positive");
  if (eps_neg <= 0 || eps_sep <= 0 || eps_pos <= 0)
    throw ConfigError("electrolyte grid: porosities must be positive");

  ElectrolyteGrid g;
  g.n_neg = g.n_sep = g.n_pos = cells_per_region;
  g.l_neg = l_neg;
  g.l_sep = l_sep;
  g.l_pos = l_pos;
  g.eps_neg = eps_neg;
  g.eps_sep = eps_sep;
  g.eps_pos = eps_pos;

  auto append = [&g](double x0, double length, double eps, int n) {
    double h = length / n;
    for (int k = 0; k < n; ++k) {
      g.x.push_back(x0 + (k + 0.5) * h);
      g.dx.push_back(h);
      g.porosity.push_back(eps);
    }
  };
  append(0.0, l_neg, eps_neg, cells_per_region);
  append(l_neg, l_sep, eps_sep, cells_per_region);
  append(l_neg + l_sep, l_pos, eps_pos, cells_per_region);
  g.conc.assign(g.x.size(), c0);
  return g;
}

double ElectrolyteGrid::total_salt() const {
  double sum = 0.0;
  for (int k = 0; k < cells(); ++k) {
    auto i = static_cast<std::size_t>(k);
    sum += porosity[i] * conc[i] * dx[i];
  }
  return sum;
}

double ElectrolyteGrid::mean_conc_negative() const {
  double sum = 0.0, len = 0.0;
  for (int k = 0; k < n_neg; ++k) {
    auto i = static_cast<std::size_t>(k);
    sum += conc[i] * dx[i];
    len += dx[i];
  }
  return sum / len;
}

double ElectrolyteGrid::mean_conc_positive() const {
  double sum = 0.0, len = 0.0;
  for (int k = n_neg + n_sep; k < cells(); ++k) {
    auto i = static_cast<std::size_t>(k);
    sum += conc[i] * dx[i];
    len += dx[i];
  }
  return sum / len;
}

StepStatus step_electrolyte(ElectrolyteGrid& grid, double current_density,
                            const ElectrolyteParameters& p, double dt) {
  const int n = grid.cells();

  // Effective diffusivity per cell; harmonic mean at faces handles the
  // porosity jumps at the region boundaries.
  std::vector<double> deff(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto i = static_cast<std::size_t>(k);
    deff[i] = p.diffusivity * std::pow(grid.porosity[i], p.bruggeman);
  }

  std::vector<double> lower(static_cast<std::size_t>(n)), diag(lower), upper(lower),
      rhs(lower);
  const double src_neg = (1.0 - p.transference) / kFaraday * current_density / grid.l_neg;
  const double src_pos = -(1.0 - p.transference) / kFaraday * current_density / grid.l_pos;

  for (int k = 0; k < n; ++k) {
    auto i = static_cast<std::size_t>(k);
    double w_lo = 0.0, w_hi = 0.0;
    if (k > 0) {
      double span = 0.5 * (grid.dx[i - 1] + grid.dx[i]);
      double dface = span / (0.5 * grid.dx[i - 1] / deff[i - 1] + 0.5 * grid.dx[i] / deff[i]);
      w_lo = dface / span;
    }
    if (k < n - 1) {
      double span = 0.5 * (grid.dx[i] + grid.dx[i + 1]);
      double dface = span / (0.5 * grid.dx[i] / deff[i] + 0.5 * grid.dx[i + 1] / deff[i + 1]);
      w_hi = dface / span;
    }
    double cap = grid.porosity[i] * grid.dx[i] / dt;
    lower[i] = -w_lo;
    upper[i] = -w_hi;
    diag[i] = cap + w_lo + w_hi;
    double src = (k < grid.n_neg) ? src_neg : (k >= grid.n_neg + grid.n_sep ? src_pos : 0.0);
    rhs[i] = cap * grid.conc[i] + src * grid.dx[i];
  }
  solve_tridiagonal(lower, diag, upper, rhs);

  for (double c : rhs) {
    if (!(c > 0.0) || !std::isfinite(c)) return StepStatus::rejected;
  }
  grid.conc = std::move(rhs);
  return StepStatus::ok;
}

double electrolyte_potential_drop(const ElectrolyteGrid& grid, double current_density,
                                  double temperature, const ElectrolyteParameters& p) {
  const double ohmic_length = grid.l_neg / (3.0 * std::pow(grid.eps_neg, p.bruggeman)) +
                              grid.l_sep / std::pow(grid.eps_sep, p.bruggeman) +
                              grid.l_pos / (3.0 * std::pow(grid.eps_pos, p.bruggeman));
  const double ohmic = -ohmic_length * current_density / p.conductivity;
  const double diffusional = 2.0 * kGasConstant * temperature / (kFaraday * p.c_init) *
                             p.thermo_factor *
                             (grid.mean_conc_positive() - grid.mean_conc_negative());
  return ohmic + diffusional;
}

}  // namespace cellsim
