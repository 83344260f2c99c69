// SPDX-License-Identifier: Apache-2.0
#include "cellsim/cell_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/kinetics.hpp"

namespace cellsim {

namespace {

const ElectrodeParameters& electrode(const CellParameters& p, Electrode side) {
  return side == Electrode::negative ? p.neg : p.pos;
}

const std::vector<ParticleGrid>& particles(const CellState& s, Electrode side) {
  return side == Electrode::negative ? s.neg_particles : s.pos_particles;
}

double mean_stoich(const std::vector<ParticleGrid>& grids, const ElectrodeParameters& e) {
  double x = 0.0;
  for (int i = 0; i < e.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    x += e.fractions[k] * grids[k].mean_concentration() / e.c_maxes[k];
  }
  return x;
}

}  // namespace

CellState CellState::initialize(const CellParameters& p, double soc) {
  CellState s;
  double x = p.neg.stoich_soc0 + soc * (p.neg.stoich_soc100 - p.neg.stoich_soc0);
  double y = p.pos.stoich_soc0 + soc * (p.pos.stoich_soc100 - p.pos.stoich_soc0);
  for (int i = 0; i < p.neg.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    s.neg_particles.push_back(ParticleGrid::uniform(
        p.neg.radii[k], p.neg.c_maxes[k], p.neg.diffusivities[k], p.radial_shells,
        x * p.neg.c_maxes[k]));
  }
  for (int i = 0; i < p.pos.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    s.pos_particles.push_back(ParticleGrid::uniform(
        p.pos.radii[k], p.pos.c_maxes[k], p.pos.diffusivities[k], p.radial_shells,
        y * p.pos.c_maxes[k]));
  }
  s.electrolyte = ElectrolyteGrid::build(p.neg.thickness, p.neg.porosity,
                                         p.separator_thickness, p.separator_porosity,
                                         p.pos.thickness, p.pos.porosity,
                                         p.electrolyte_cells, p.elec.c_init);
  s.temperature = p.thermal.t_ambient;
  s.neg_fluxes.assign(static_cast<std::size_t>(p.neg.size_classes()), 0.0);
  s.pos_fluxes.assign(static_cast<std::size_t>(p.pos.size_classes()), 0.0);
  return s;
}

double CellState::neg_mean_stoich(const CellParameters& p) const {
  return mean_stoich(neg_particles, p.neg);
}

double CellState::pos_mean_stoich(const CellParameters& p) const {
  return mean_stoich(pos_particles, p.pos);
}

double CellState::soc(const CellParameters& p) const {
  return (neg_mean_stoich(p) - p.neg.stoich_soc0) /
         (p.neg.stoich_soc100 - p.neg.stoich_soc0);
}

double CellState::solid_lithium_per_area(const CellParameters& p) const {
  double total = 0.0;
  for (int i = 0; i < p.neg.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    total += p.neg.thickness * p.neg.active_fraction * p.neg.fractions[k] *
             neg_particles[k].mean_concentration();
  }
  for (int i = 0; i < p.pos.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    total += p.pos.thickness * p.pos.active_fraction * p.pos.fractions[k] *
             pos_particles[k].mean_concentration();
  }
  return total;
}

double mean_ce_pow(const ElectrolyteGrid& grid, Electrode side, double alpha_a) {
  int first = side == Electrode::negative ? 0 : grid.n_neg + grid.n_sep;
  int last = side == Electrode::negative ? grid.n_neg - 1 : grid.cells() - 1;
  double span = grid.x[static_cast<std::size_t>(last)] - grid.x[static_cast<std::size_t>(first)];
  double sum = 0.0;
  for (int k = first; k < last; ++k) {
    auto i = static_cast<std::size_t>(k);
    double fa = std::pow(grid.conc[i], alpha_a);
    double fb = std::pow(grid.conc[i + 1], alpha_a);
    sum += 0.5 * (fa + fb) * (grid.x[i + 1] - grid.x[i]);
  }
  return sum / span;
}

double exchange_current(const CellState& s, const CellParameters& p, Electrode side,
                        int size) {
  const auto& e = electrode(p, side);
  auto k = static_cast<std::size_t>(size);
  double ce_pow = mean_ce_pow(s.electrolyte, side, p.alpha_a);
  double c_se = particles(s, side)[k].surface_concentration();
  return exchange_current_density(e.rate_constant, ce_pow, c_se, e.c_maxes[k], p.alpha_a,
                                  p.alpha_c);
}

namespace {

// Flux of one size class at the common potential phi, from the monotone
// relation eta(j) + ASR_f*F*j = phi - U(x_se). Closed form when the film
// resistance vanishes, otherwise a guarded Newton iteration.
double size_class_flux(double psi, double i0, double asr, double temperature,
                       double alpha_a, double alpha_c) {
  if (i0 <= 0.0) {
    // Starved interface: can only carry zero flux, and only at eta = 0.
    if (psi == 0.0) return 0.0;
    char msg[128];
    std::snprintf(msg, sizeof msg, "starved kinetics: i0 = 0 with driving potential %.3e V",
                  psi);
    throw SolverError(msg);
  }
  if (asr == 0.0) return bv_flux(i0, psi, temperature, alpha_a, alpha_c);

  const double f = kFaraday / (kGasConstant * temperature);
  double j = bv_flux(i0, psi, temperature, alpha_a, alpha_c);  // ASR = 0 guess
  double lo = std::min(0.0, j), hi = std::max(0.0, j);         // eta and ohmic share psi's sign
  for (int it = 0; it < 100; ++it) {
    double eta = solve_overpotential(i0, j, temperature, alpha_a, alpha_c);
    double r = eta + asr * kFaraday * j - psi;
    if (r > 0.0) hi = j; else lo = j;
    double deta_dj = 2.0 / ((alpha_a + alpha_c) * f) /
                     std::hypot(1.0, kFaraday * j / (2.0 * i0)) * kFaraday / (2.0 * i0);
    double next = j - r / (deta_dj + asr * kFaraday);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - j) <= 1e-14 * std::max(1e-12, std::abs(j))) return next;
    j = next;
  }
  throw SolverError("size-class flux solve stalled");
}

}  // namespace

FluxPartition partition_current(const CellState& s, const CellParameters& p,
                                Electrode side, double current_density) {
  const auto& e = electrode(p, side);
  const auto& grids = particles(s, side);
  const int n = e.size_classes();
  const double target =
      side == Electrode::negative ? current_density : -current_density;

  FluxPartition out;
  out.flux.assign(static_cast<std::size_t>(n), 0.0);
  out.overpotential.assign(static_cast<std::size_t>(n), 0.0);
  out.exchange.resize(static_cast<std::size_t>(n));
  out.surface_conc.resize(static_cast<std::size_t>(n));
  out.surface_stoich.resize(static_cast<std::size_t>(n));

  const double ce_pow = mean_ce_pow(s.electrolyte, side, p.alpha_a);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    double c_se = grids[k].surface_concentration();
    out.surface_conc[k] = c_se;
    out.surface_stoich[k] = c_se / e.c_maxes[k];
    out.exchange[k] = exchange_current_density(e.rate_constant, ce_pow, c_se,
                                               e.c_maxes[k], p.alpha_a, p.alpha_c);
    u[k] = e.ocp(out.surface_stoich[k]);
  }

  if (target == 0.0) {
    // Rest: every class carries zero flux at its own open-circuit potential.
    // The common potential is only meaningful for a loaded electrode; report
    // the fraction-weighted OCP so voltage reduces to U(+) - U(-) at rest.
    double phi = 0.0;
    for (int i = 0; i < n; ++i) phi += e.fractions[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    out.potential = phi;
    return out;
  }

  // Single size class: the charge balance fixes the flux directly.
  if (n == 1) {
    double j = target / (e.thickness * e.specific_area(0) * kFaraday);
    out.flux[0] = j;
    out.overpotential[0] = solve_overpotential(out.exchange[0], j, s.temperature,
                                               p.alpha_a, p.alpha_c);
    out.potential = out.overpotential[0] + u[0] + e.film_resistance * kFaraday * j;
    return out;
  }

  // Outer solve on the common potential phi; total current is monotone in phi.
  auto total = [&](double phi) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      auto k = static_cast<std::size_t>(i);
      double j = size_class_flux(phi - u[k], out.exchange[k], e.film_resistance,
                                 s.temperature, p.alpha_a, p.alpha_c);
      out.flux[k] = j;
      sum += e.thickness * e.specific_area(i) * kFaraday * j;
    }
    return sum;
  };

  // Bracket around the single-class estimate.
  double la_f = 0.0;
  for (int i = 0; i < n; ++i) la_f += e.thickness * e.specific_area(i) * kFaraday;
  double j_mean = target / la_f;
  double i0_mean = 0.0;
  for (int i = 0; i < n; ++i) i0_mean += out.exchange[static_cast<std::size_t>(i)] / n;
  double phi = solve_overpotential(i0_mean, j_mean, s.temperature, p.alpha_a, p.alpha_c) +
               u[0] + e.film_resistance * kFaraday * j_mean;
  double width = 0.1;
  double lo = phi - width, hi = phi + width;
  for (int it = 0; it < 200 && total(lo) > target; ++it) { hi = lo; lo -= width; width *= 2.0; }
  width = 0.1;
  for (int it = 0; it < 200 && total(hi) < target; ++it) { lo = hi; hi += width; width *= 2.0; }

  const double tol = 1e-12 * std::max(std::abs(target), 1e-3);
  for (int it = 0; it < 200; ++it) {
    phi = 0.5 * (lo + hi);
    double r = total(phi) - target;
    if (std::abs(r) <= tol || hi - lo <= 1e-16 * std::max(1.0, std::abs(phi))) {
      out.potential = phi;
      for (int i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        out.overpotential[k] = solve_overpotential(out.exchange[k], out.flux[k],
                                                   s.temperature, p.alpha_a, p.alpha_c);
      }
      return out;
    }
    if (r > 0.0) hi = phi; else lo = phi;
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "current partition stalled: target %.6e A/m^2, bracket [%.6e, %.6e] V",
                target, lo, hi);
  throw SolverError(msg);
}

double terminal_voltage(const CellState& s, const CellParameters& p, double current_A) {
  double i_dens = p.current_density(current_A);
  FluxPartition fn = partition_current(s, p, Electrode::negative, i_dens);
  FluxPartition fp = partition_current(s, p, Electrode::positive, i_dens);
  double dphi = electrolyte_potential_drop(s.electrolyte, i_dens, s.temperature, p.elec);
  return fp.potential - fn.potential + dphi;
}

void step_temperature(CellState& s, const CellParameters& p, double current_A,
                      double voltage, double dt) {
  const double i_dens = p.current_density(current_A);
  double reaction = 0.0;
  for (Electrode side : {Electrode::negative, Electrode::positive}) {
    const auto& e = electrode(p, side);
    const auto& grids = particles(s, side);
    const auto& flux = side == Electrode::negative ? s.neg_fluxes : s.pos_fluxes;
    for (int i = 0; i < e.size_classes(); ++i) {
      auto k = static_cast<std::size_t>(i);
      double x_se = std::clamp(grids[k].surface_concentration() / e.c_maxes[k], 0.0, 1.0);
      double u = e.ocp(x_se);
      double dudt = e.entropy(x_se);
      double vf = e.film_resistance * kFaraday * flux[k];
      reaction += e.specific_area(i) * kFaraday * flux[k] * e.thickness *
                  (u + vf - s.temperature * dudt);
    }
  }
  double gen = -i_dens * voltage - reaction;  // W/m^2
  // Implicit in the convective relaxation, exact at the rest fixed point.
  const double cap = p.thermal.heat_capacity_area;
  s.temperature = p.thermal.t_ambient +
                  (cap * (s.temperature - p.thermal.t_ambient) + dt * gen) /
                      (cap + dt * p.thermal.h_conv);
}

StepStatus step_cell(CellState& s, const CellParameters& p, double current_A, double dt,
                     PlantStepOutputs* out) {
  const double i_dens = p.current_density(current_A);
  CellState backup = s;

  FluxPartition fn = partition_current(s, p, Electrode::negative, i_dens);
  FluxPartition fp = partition_current(s, p, Electrode::positive, i_dens);
  double dphi = electrolyte_potential_drop(s.electrolyte, i_dens, s.temperature, p.elec);
  double v = fp.potential - fn.potential + dphi;

  s.neg_fluxes = fn.flux;
  s.pos_fluxes = fp.flux;
  step_temperature(s, p, current_A, v, dt);

  bool ok = true;
  for (int i = 0; ok && i < p.neg.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    ok = step_solid_diffusion(s.neg_particles[k], fn.flux[k], dt) == StepStatus::ok;
  }
  for (int i = 0; ok && i < p.pos.size_classes(); ++i) {
    auto k = static_cast<std::size_t>(i);
    ok = step_solid_diffusion(s.pos_particles[k], fp.flux[k], dt) == StepStatus::ok;
  }
  if (ok) ok = step_electrolyte(s.electrolyte, i_dens, p.elec, dt) == StepStatus::ok;

  if (!ok) {
    s = std::move(backup);
    return StepStatus::rejected;
  }
  s.charge_throughput += std::abs(current_A) * dt;
  if (out) {
    out->voltage = v;
    out->neg = std::move(fn);
    out->pos = std::move(fp);
  }
  return StepStatus::ok;
}

}  // namespace cellsim
