// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cellsim/errors.hpp"
#include "cellsim/sim_engine.hpp"
#include "test_support.hpp"

using cellsim::kPhaseCC;
using cellsim::kPhaseCV;
using cellsim::kPhaseStress;
using cellsim::kPhaseTemperature;
using cellsim::Protocol;
using cellsim::Scenario;
using cellsim::SimResult;
using cellsim::Termination;
using testsupport::make_test_cell;
using testsupport::make_test_gains;
using testsupport::make_test_limits;
using testsupport::make_test_mech;

namespace {

Scenario base_scenario(const cellsim::CellParameters& p) {
  Scenario sc;
  sc.protocol = Protocol::cccv;
  sc.limits = make_test_limits(p.capacity_Ah);
  // Low enough that the toy cell actually reaches the setpoint and tapers
  // before the target state of charge.
  sc.limits.voltage_max = 3.85;
  sc.gains = make_test_gains();
  // Explicit-Euler anti-windup is stable for dt * k_anti_windup <= 1; stay
  // well inside that bound.
  sc.dt = 0.05;
  sc.target_soc = 0.9;
  sc.max_time = 7200.0;
  return sc;
}

}  // namespace

TEST_CASE("scenario validation rejects malformed setups") {
  const auto p = make_test_cell();
  Scenario sc = base_scenario(p);
  sc.dt = 0.0;
  CHECK_THROWS_AS(sc.validate(), cellsim::ConfigError);
  sc = base_scenario(p);
  sc.initial_soc = 0.95;  // above target
  CHECK_THROWS_AS(sc.validate(), cellsim::ConfigError);
  sc = base_scenario(p);
  sc.active_material_scale = 0.0;
  CHECK_THROWS_AS(sc.validate(), cellsim::ConfigError);
  CHECK_NOTHROW(base_scenario(p).validate());
}

TEST_CASE("constant-current constant-voltage charge reaches the target") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  const Scenario sc = base_scenario(p);
  const SimResult r = run_charge(sc, p, mech);

  REQUIRE(r.samples() > 10);
  CHECK(r.termination == Termination::target_soc);
  CHECK(r.soc.back() >= 0.9);
  CHECK(r.time.front() == 0.0);
  CHECK(r.current.front() == 0.0);

  // The applied current is always within the floor and the voltage stays
  // near or below the setpoint.
  for (std::size_t k = 0; k < r.samples(); ++k) {
    CHECK(r.current[k] >= sc.limits.current_max);
  }
  CHECK(r.max_voltage <= sc.limits.voltage_max + 5e-3);

  // It actually saturated at the floor early in the constant-current phase.
  CHECK(r.current[2] == sc.limits.current_max);

  // Voltage reached the setpoint, so the CV event must be present.
  REQUIRE(r.t_cv.has_value());
  CHECK(*r.t_cv > 0.0);
  CHECK(r.phase.back() == cellsim::kPhaseCV);
}

TEST_CASE("state of charge tracks the integrated current exactly") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  Scenario sc = base_scenario(p);
  sc.target_soc = 0.6;
  const SimResult r = run_charge(sc, p, mech);

  double coulombs = 0.0;
  for (std::size_t k = 1; k < r.samples(); ++k) {
    coulombs += -r.current[k] * sc.dt;
  }
  const double expect = r.soc.front() + coulombs / (p.derived_capacity_Ah() * 3600.0);
  CHECK(r.soc.back() == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("runs are deterministic") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  Scenario sc = base_scenario(p);
  sc.target_soc = 0.5;
  const SimResult a = run_charge(sc, p, mech);
  const SimResult b = run_charge(sc, p, mech);
  CHECK(a.time == b.time);
  CHECK(a.current == b.current);
  CHECK(a.voltage == b.voltage);
  CHECK(a.stress == b.stress);
  CHECK(a.temperature == b.temperature);
}

TEST_CASE("halving dt barely moves the charge time") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  Scenario sc = base_scenario(p);
  sc.target_soc = 0.75;
  sc.dt = 0.1;
  const SimResult coarse = run_charge(sc, p, mech);
  sc.dt = 0.05;
  const SimResult fine = run_charge(sc, p, mech);

  const auto tc = charge_time(coarse, 0.0, 0.7);
  const auto tf = charge_time(fine, 0.0, 0.7);
  REQUIRE(tc.has_value());
  REQUIRE(tf.has_value());
  CHECK(std::abs(*tc - *tf) / *tf < 0.01);
}

TEST_CASE("replaying the recorded profile reproduces the closed-loop run") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  Scenario sc = base_scenario(p);
  sc.protocol = Protocol::cccvest;
  sc.target_soc = 0.6;
  const SimResult closed = run_charge(sc, p, mech);

  const std::vector<double> profile(closed.current.begin() + 1, closed.current.end());
  const SimResult open = replay_current(profile, sc, p, mech);

  REQUIRE(open.samples() == closed.samples());
  CHECK(open.min_eta_plating == closed.min_eta_plating);  // bitwise
  CHECK(open.soc.back() == closed.soc.back());
  CHECK(open.voltage.back() == closed.voltage.back());
}

TEST_CASE("charge_time interpolates between samples") {
  SimResult r;
  r.time = {0.0, 10.0, 20.0, 30.0};
  r.soc = {0.0, 0.25, 0.5, 1.0};
  CHECK(*charge_time(r, 0.0, 0.5) == doctest::Approx(20.0));
  CHECK(*charge_time(r, 0.0, 0.75) == doctest::Approx(25.0));
  CHECK(*charge_time(r, 0.25, 0.75) == doctest::Approx(15.0));
  CHECK(!charge_time(r, 0.0, 1.5).has_value());
}

TEST_CASE("activation peak-to-peak windows one constraint hold") {
  SimResult r;
  auto push = [&](double t, double i, int ph) {
    r.time.push_back(t);
    r.current.push_back(i);
    r.phase.push_back(ph);
  };
  push(0.0, -10.0, kPhaseCC);
  push(0.1, -40.0, kPhaseCC);      // pre-activation extreme, excluded
  push(0.2, -30.0, kPhaseStress);  // window opens
  push(0.3, -24.0, kPhaseStress);
  push(0.4, -26.0, kPhaseCC);      // momentary drop-out stays inside
  push(0.5, -22.0, kPhaseStress);
  push(0.6, -5.0, kPhaseCV);       // later phase closes the window
  const auto pp = activation_peak_to_peak(r, kPhaseStress);
  REQUIRE(pp.has_value());
  CHECK(*pp == doctest::Approx(8.0));
  CHECK(!activation_peak_to_peak(r, kPhaseTemperature).has_value());
  // A finite window keeps only samples within window_s of activation.
  CHECK(*activation_peak_to_peak(r, kPhaseStress, 0.25) == doctest::Approx(6.0));
  CHECK(*activation_peak_to_peak(r, kPhaseStress, 100.0) == doctest::Approx(8.0));
}

TEST_CASE("tuning scenarios isolate a single aging channel") {
  Scenario base;
  base.protocol = Protocol::cccv;
  base.limits.eta_plating_min = 0.0;
  base.limits.stress_max = 9.2e7;
  base.limits.temperature_max = 313.15;
  base.limits.voltage_max = 4.2;
  base.limits.current_max = -40.0;
  base.gains.k_i_voltage = 50.0;
  base.gains.k_i_plating = 5.0e4;
  base.gains.k_i_stress = 2.0e-4;
  base.gains.k_p_stress = 1.0e-6;
  base.gains.k_i_temperature = 50.0;
  base.gains.k_p_temperature = 500.0;
  base.gains.k_anti_windup = 10.0;

  const Scenario ss = stress_tuning_scenario(base, 2.5e-7);
  CHECK(ss.protocol == Protocol::cccvest);
  CHECK(ss.gains.k_i_plating == 0.0);
  CHECK(ss.gains.k_i_temperature == 0.0);
  CHECK(ss.gains.k_p_temperature == 0.0);
  CHECK(ss.gains.k_p_stress == doctest::Approx(2.5e-7));
  CHECK(ss.gains.k_i_stress == base.gains.k_i_stress);
  CHECK(ss.gains.k_i_voltage == base.gains.k_i_voltage);
  CHECK(ss.gains.k_anti_windup == base.gains.k_anti_windup);
  CHECK(std::isinf(ss.limits.temperature_max));
  CHECK(std::isinf(ss.limits.eta_plating_min));
  CHECK(ss.limits.eta_plating_min < 0.0);
  CHECK(ss.limits.stress_max == base.limits.stress_max);
  CHECK(ss.limits.voltage_max == base.limits.voltage_max);

  const Scenario ts = temperature_tuning_scenario(base, 77.0);
  CHECK(ts.protocol == Protocol::cccvest);
  CHECK(ts.gains.k_i_plating == 0.0);
  CHECK(ts.gains.k_i_stress == 0.0);
  CHECK(ts.gains.k_p_stress == 0.0);
  CHECK(ts.gains.k_p_temperature == doctest::Approx(77.0));
  CHECK(ts.gains.k_i_temperature == base.gains.k_i_temperature);
  CHECK(std::isinf(ts.limits.stress_max));
  CHECK(std::isinf(ts.limits.eta_plating_min));
  CHECK(ts.limits.temperature_max == base.limits.temperature_max);
}

TEST_CASE("sensitivity sweep: structure, ordering and the self-replay bound") {
  const auto p = make_test_cell();
  const auto mech = make_test_mech();
  Scenario sc = base_scenario(p);
  sc.protocol = Protocol::cccvest;
  sc.target_soc = 0.85;
  sc.dt = 0.1;
  sc.max_time = 5000.0;

  const std::vector<double> margins = {0.0};
  const std::vector<double> ratios = {1.0, 0.9};
  const auto rows = sensitivity_sweep(sc, p, mech, margins, ratios);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].margin == 0.0);
  CHECK(rows[0].ratio == 1.0);
  CHECK(rows[1].ratio == 0.9);

  // Self-replay (ratio 1) reproduces the closed loop, which held the plating
  // potential at or above the margin up to transient overshoot.
  CHECK(rows[0].min_eta_plating >= margins[0] - 1e-3);
  // Removing active material makes plating strictly worse.
  CHECK(rows[1].min_eta_plating < rows[0].min_eta_plating);
}
