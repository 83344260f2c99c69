// SPDX-License-Identifier: Apache-2.0
#include "cellsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "cellsim/errors.hpp"

namespace cellsim {

std::string to_string(Protocol p) {
  return p == Protocol::cccv ? "cccv" : "cccvest";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::target_soc: return "target_soc";
    case Termination::cv_cutoff: return "cv_cutoff";
    default: return "max_time";
  }
}

void Scenario::validate() const {
  limits.validate();
  gains.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(initial_soc >= 0) || !(initial_soc < target_soc) || !(target_soc <= 1.0)) {
    throw ConfigError("require 0 <= initial_soc < target_soc <= 1");
  }
  if (!(max_time > 0)) throw ConfigError("max_time must be positive");
  if (!(cv_cutoff_c_rate >= 0)) throw ConfigError("cv_cutoff_c_rate must be >= 0");
  if (!(active_material_scale > 0) || !(active_material_scale <= 1.0)) {
    throw ConfigError("active_material_scale must be in (0, 1]");
  }
}

namespace {

// Aged plant: scale the negative-electrode solid fraction. The copy is not
// re-validated; scaling intentionally breaks the nominal-capacity agreement.
CellParameters scaled_plant(const CellParameters& cell, double scale) {
  CellParameters p = cell;
  p.neg.active_fraction *= scale;
  return p;
}

// Advance the plant by one controller step, subdividing on rejection.
PlantStepOutputs advance_plant(CellState& state, const CellParameters& p, double current,
                               double dt, double t_now) {
  constexpr int kMaxHalvings = 12;
  for (int halving = 0; halving <= kMaxHalvings; ++halving) {
    const int n = 1 << halving;
    const double sub = dt / n;
    CellState backup = state;
    PlantStepOutputs out;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      if (step_cell(state, p, current, sub, &out) != StepStatus::ok) {
        ok = false;
        break;
      }
    }
    if (ok) return out;
    state = backup;
  }
  char msg[192];
  std::snprintf(msg, sizeof msg,
                "plant step failed after %d subdivisions (t=%.3f s, I=%.4f A, T=%.2f K)",
                kMaxHalvings, t_now, current, state.temperature);
  throw SimulationError(msg);
}

// Appends samples and maintains events, extrema, the CV latch and the phase
// channel while a run is in progress.
struct Recorder {
  Recorder(const Scenario& sc, bool aging_phases)
      : limits_(sc.limits), track_aging_(aging_phases) {
    res.min_eta_plating = std::numeric_limits<double>::infinity();
    res.max_stress = -std::numeric_limits<double>::infinity();
    res.max_temperature = -std::numeric_limits<double>::infinity();
    res.max_voltage = -std::numeric_limits<double>::infinity();
  }

  void push(double t, double current, double soc, const ConstraintSignals& sig) {
    if (sig.plating_active && !prev_.plating_active) aging_code_ = kPhasePlating;
    if (sig.stress_active && !prev_.stress_active) aging_code_ = kPhaseStress;
    if (sig.temperature_active && !prev_.temperature_active) aging_code_ = kPhaseTemperature;
    if (sig.voltage >= limits_.voltage_max - 1e-3) cv_latched_ = true;

    if (sig.plating_active && !res.t_plating) res.t_plating = t;
    if (sig.stress_active && !res.t_stress) res.t_stress = t;
    if (sig.temperature_active && !res.t_temperature) res.t_temperature = t;

    res.time.push_back(t);
    res.current.push_back(current);
    res.voltage.push_back(sig.voltage);
    res.soc.push_back(soc);
    res.eta_plating.push_back(sig.eta_plating);
    res.stress.push_back(sig.stress);
    res.temperature.push_back(sig.temperature);
    const int phase = cv_latched_ ? kPhaseCV : (track_aging_ ? aging_code_ : kPhaseCC);
    res.phase.push_back(phase);

    res.min_eta_plating = std::min(res.min_eta_plating, sig.eta_plating);
    res.max_stress = std::max(res.max_stress, sig.stress);
    res.max_temperature = std::max(res.max_temperature, sig.temperature);
    res.max_voltage = std::max(res.max_voltage, sig.voltage);
    prev_ = sig;
  }

  bool cv_latched() const { return cv_latched_; }

  // First sample at the voltage setpoint (within 1 mV) that stays within 2 mV
  // of it for the following `hold` seconds (or to the end of the run).
  void finalize_cv_event(double hold) {
    const std::size_t n = res.time.size();
    if (n < 2) return;
    const double dt = res.time[1] - res.time[0];
    const auto window = static_cast<std::size_t>(std::lround(hold / dt));
    for (std::size_t k = 0; k < n; ++k) {
      if (res.voltage[k] < limits_.voltage_max - 1e-3) continue;
      const std::size_t last = std::min(k + window, n - 1);
      bool sustained = true;
      for (std::size_t m = k; m <= last; ++m) {
        if (res.voltage[m] < limits_.voltage_max - 2e-3) {
          sustained = false;
          break;
        }
      }
      if (sustained) {
        res.t_cv = res.time[k];
        return;
      }
    }
  }

  SimResult res;

 private:
  ConstraintLimits limits_;
  bool track_aging_ = false;
  int aging_code_ = kPhaseCC;
  bool cv_latched_ = false;
  ConstraintSignals prev_{};
};

}  // namespace

SimResult run_charge(const Scenario& sc, const CellParameters& cell,
                     const MechanicalParameters& mech) {
  sc.validate();
  cell.validate();
  mech.validate();

  const CellParameters plant = scaled_plant(cell, sc.active_material_scale);
  CellState state = CellState::initialize(plant, sc.initial_soc);
  const double cutoff_amps = sc.cv_cutoff_c_rate * cell.capacity_Ah;

  Recorder rec(sc, sc.protocol == Protocol::cccvest);
  double v0 = terminal_voltage(state, plant, 0.0);
  ConstraintSignals sig = evaluate_constraints(state, plant, mech, v0, sc.limits);
  rec.push(0.0, 0.0, state.soc(plant), sig);

  ControllerState cst = ControllerState::start(sc.limits);
  double t = 0.0;
  rec.res.termination = Termination::max_time;
  while (t < sc.max_time - 1e-9) {
    double current;
    if (sc.protocol == Protocol::cccv) {
      current = cccv_step(cst, sig.voltage, sc.limits, sc.gains, sc.dt);
    } else {
      current = cccvest_step(cst, sig, sc.limits, sc.gains, sc.dt);
    }
    const PlantStepOutputs out = advance_plant(state, plant, current, sc.dt, t);
    t += sc.dt;
    sig = evaluate_constraints(state, plant, mech, out.voltage, sc.limits);
    const double soc = state.soc(plant);
    rec.push(t, current, soc, sig);

    if (soc >= sc.target_soc) {
      rec.res.termination = Termination::target_soc;
      break;
    }
    if (rec.cv_latched() && std::abs(current) < cutoff_amps) {
      rec.res.termination = Termination::cv_cutoff;
      break;
    }
  }
  rec.finalize_cv_event(2.0);
  return std::move(rec.res);
}

SimResult replay_current(const std::vector<double>& current_profile, const Scenario& sc,
                         const CellParameters& cell, const MechanicalParameters& mech) {
  sc.validate();
  cell.validate();
  mech.validate();

  const CellParameters plant = scaled_plant(cell, sc.active_material_scale);
  CellState state = CellState::initialize(plant, sc.initial_soc);

  Recorder rec(sc, sc.protocol == Protocol::cccvest);
  double v0 = terminal_voltage(state, plant, 0.0);
  rec.push(0.0, 0.0, state.soc(plant),
           evaluate_constraints(state, plant, mech, v0, sc.limits));

  double t = 0.0;
  for (double current : current_profile) {
    const PlantStepOutputs out = advance_plant(state, plant, current, sc.dt, t);
    t += sc.dt;
    rec.push(t, current, state.soc(plant),
             evaluate_constraints(state, plant, mech, out.voltage, sc.limits));
  }
  rec.res.termination = Termination::max_time;
  rec.finalize_cv_event(2.0);
  return std::move(rec.res);
}

namespace {

std::optional<double> time_at_soc(const SimResult& r, double target) {
  if (r.soc.empty()) return std::nullopt;
  if (r.soc.front() >= target) return r.time.front();
  for (std::size_t k = 1; k < r.soc.size(); ++k) {
    if (r.soc[k] >= target) {
      const double s0 = r.soc[k - 1];
      const double s1 = r.soc[k];
      if (s1 == s0) return r.time[k];
      const double w = (target - s0) / (s1 - s0);
      return r.time[k - 1] + w * (r.time[k] - r.time[k - 1]);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> charge_time(const SimResult& r, double soc_from, double soc_to) {
  const auto a = time_at_soc(r, soc_from);
  const auto b = time_at_soc(r, soc_to);
  if (!a || !b) return std::nullopt;
  return *b - *a;
}

std::optional<double> activation_peak_to_peak(const SimResult& r, int phase,
                                              double window_s) {
  const std::size_t n =
      std::min({r.phase.size(), r.current.size(), r.time.size()});
  std::size_t a = 0;
  while (a < n && r.phase[a] != phase) ++a;
  if (a == n) return std::nullopt;
  const double t_end = r.time[a] + window_s;
  double lo = r.current[a];
  double hi = r.current[a];
  for (std::size_t k = a + 1; k < n && r.phase[k] <= phase && r.time[k] <= t_end; ++k) {
    lo = std::min(lo, r.current[k]);
    hi = std::max(hi, r.current[k]);
  }
  return hi - lo;
}

Scenario stress_tuning_scenario(const Scenario& base, double k_p_stress) {
  Scenario sc = base;
  sc.protocol = Protocol::cccvest;
  sc.limits.eta_plating_min = -std::numeric_limits<double>::infinity();
  sc.limits.temperature_max = std::numeric_limits<double>::infinity();
  sc.gains.k_i_plating = 0.0;
  sc.gains.k_i_temperature = 0.0;
  sc.gains.k_p_temperature = 0.0;
  sc.gains.k_p_stress = k_p_stress;
  return sc;
}

Scenario temperature_tuning_scenario(const Scenario& base, double k_p_temperature) {
  Scenario sc = base;
  sc.protocol = Protocol::cccvest;
  sc.limits.eta_plating_min = -std::numeric_limits<double>::infinity();
  sc.limits.stress_max = std::numeric_limits<double>::infinity();
  sc.gains.k_i_plating = 0.0;
  sc.gains.k_i_stress = 0.0;
  sc.gains.k_p_stress = 0.0;
  sc.gains.k_p_temperature = k_p_temperature;
  return sc;
}

std::vector<SensitivityPoint> sensitivity_sweep(const Scenario& base,
                                                const CellParameters& cell,
                                                const MechanicalParameters& mech,
                                                const std::vector<double>& margins,
                                                const std::vector<double>& ratios) {
  std::vector<SensitivityPoint> table;
  table.reserve(margins.size() * ratios.size());
  for (double margin : margins) {
    Scenario closed = base;
    closed.protocol = Protocol::cccvest;
    closed.active_material_scale = 1.0;
    closed.limits.eta_plating_min = margin;
    // Plating channel only: the study isolates the plating margin.
    closed.gains.k_i_stress = 0.0;
    closed.gains.k_p_stress = 0.0;
    closed.gains.k_i_temperature = 0.0;
    closed.gains.k_p_temperature = 0.0;

    const SimResult fresh = run_charge(closed, cell, mech);
    const std::vector<double> profile(fresh.current.begin() + 1, fresh.current.end());

    std::vector<std::future<double>> jobs;
    jobs.reserve(ratios.size());
    for (double ratio : ratios) {
      jobs.push_back(std::async(std::launch::async, [&, ratio] {
        Scenario aged = closed;
        aged.active_material_scale = ratio;
        return replay_current(profile, aged, cell, mech).min_eta_plating;
      }));
    }
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      table.push_back({margin, ratios[i], jobs[i].get()});
    }
  }
  return table;
}

}  // namespace cellsim
