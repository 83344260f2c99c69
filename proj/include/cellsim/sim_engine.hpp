// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cellsim/cell_model.hpp"
#include "cellsim/controller.hpp"

namespace cellsim {

enum class Protocol { cccv, cccvest };

enum class Termination { target_soc, cv_cutoff, max_time };

std::string to_string(Protocol p);
std::string to_string(Termination t);

// Phase codes of the logged phase channel.
inline constexpr int kPhaseCC = 0;
inline constexpr int kPhasePlating = 1;
inline constexpr int kPhaseStress = 2;
inline constexpr int kPhaseTemperature = 3;
inline constexpr int kPhaseCV = 4;

struct Scenario {
  Protocol protocol = Protocol::cccvest;
  ConstraintLimits limits;
  ControllerGains gains;
  double dt = 0.01;                     // controller and plant step (s)
  double initial_soc = 0.0;
  double target_soc = 1.0;
  double max_time = 7200.0;             // s
  double cv_cutoff_c_rate = 0.05;       // end of charge when |I| < rate * capacity
  double active_material_scale = 1.0;   // scales the negative solid fraction (aging)

  void validate() const;
};

// Full-resolution trajectory plus derived summary values. One sample per
// controller step; sample 0 is the rest state before current is applied.
struct SimResult {
  std::vector<double> time;         // s
  std::vector<double> current;      // applied current over the step ending here (A)
  std::vector<double> voltage;      // V
  std::vector<double> soc;
  std::vector<double> eta_plating;  // V
  std::vector<double> stress;       // Pa
  std::vector<double> temperature;  // K
  std::vector<int> phase;

  std::optional<double> t_plating;      // t1: plating channel first active
  std::optional<double> t_stress;       // t2
  std::optional<double> t_temperature;  // t3
  std::optional<double> t_cv;           // t4: voltage at the setpoint, sustained

  double min_eta_plating = 0.0;
  double max_stress = 0.0;      // Pa
  double max_temperature = 0.0; // K
  double max_voltage = 0.0;     // V
  Termination termination = Termination::max_time;

  std::size_t samples() const { return time.size(); }
};

// Closed-loop charge under the scenario's protocol. Throws SimulationError if
// the plant cannot be advanced even with 2^12-fold step subdivision.
SimResult run_charge(const Scenario& sc, const CellParameters& cell,
                     const MechanicalParameters& mech);

// Open-loop replay of a recorded per-step current sequence on a (possibly
// aged) plant; runs the whole profile regardless of SOC.
SimResult replay_current(const std::vector<double>& current_profile, const Scenario& sc,
                         const CellParameters& cell, const MechanicalParameters& mech);

// Elapsed time between two SOC crossings (linear interpolation between
// samples); empty if the trajectory never covers the range.
std::optional<double> charge_time(const SimResult& r, double soc_from, double soc_to);

// Peak-to-peak applied current over a constraint hold: from the first sample
// whose phase equals `phase` until `window_s` seconds later, a later phase
// taking over, or the end of the run, whichever comes first. Brief drop-outs
// to lower phases stay inside the window. Empty if the phase never activates.
std::optional<double> activation_peak_to_peak(
    const SimResult& r, int phase,
    double window_s = std::numeric_limits<double>::infinity());

// Current requests for the proportional-gain tuning scenarios. Stress needs
// the harder rate: at gentler requests the stress hold is entered so slowly
// that the three proportional gains produce near-identical transients.
inline constexpr double kStressTuningCRate = 12.0;
inline constexpr double kTemperatureTuningCRate = 8.0;

// Span the tuning sweeps report over: covers a full period of the undamped
// temperature ring yet ends inside either hold, so every gain is measured
// over the same stretch of trajectory.
inline constexpr double kTuningWindowSeconds = 20.0;

// Copies of `base` with every constraint other than the tuned one (and the
// voltage loop) removed: their gains are zeroed and their limits moved out of
// reach, so the hold transient shows the tuned proportional term in
// isolation.
Scenario stress_tuning_scenario(const Scenario& base, double k_p_stress);
Scenario temperature_tuning_scenario(const Scenario& base, double k_p_temperature);

struct SensitivityPoint {
  double margin = 0.0;       // plating setpoint used in the closed loop (V)
  double ratio = 0.0;        // active-material scale of the replay plant
  double min_eta_plating = 0.0;  // worst replayed plating potential (V)
};

// Margin/ratio sensitivity study: for each margin, run the closed loop with
// only the plating channel enabled on the fresh plant, record the applied
// current, then replay it open loop on plants with the negative-electrode
// active fraction scaled by each ratio. Rows are ordered as the inputs
// (margin-major); replays run concurrently.
std::vector<SensitivityPoint> sensitivity_sweep(const Scenario& base,
                                                const CellParameters& cell,
                                                const MechanicalParameters& mech,
                                                const std::vector<double>& margins,
                                                const std::vector<double>& ratios);

}  // namespace cellsim
