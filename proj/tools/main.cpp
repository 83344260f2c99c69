// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: single simulations, protocol comparisons, gain
// sweeps and the aging sensitivity study. Writes CSV trajectories plus a
// summary.json per command; exits nonzero if any requested run fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellsim/config.hpp"
#include "cellsim/csv.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/sim_engine.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace cellsim;

namespace {

struct CommonOpts {
  std::string config = "params/default_cell.toml";
  std::string out = "out";
  std::string protocol = "vest";
  double crate = NAN;      // override of the maximum charge rate (C)
  double vmax = NAN;       // override of the voltage setpoint (V)
  double dt = NAN;         // controller step (s)
  double max_time = NAN;   // s
  double target_soc = NAN;
  double cv_cutoff = NAN;  // C rate
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_protocol) {
  cmd->add_option("--config", c.config, "parameter file (TOML)")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  if (with_protocol) {
    cmd->add_option("--protocol", c.protocol, "cccv | vest")->capture_default_str();
  }
  cmd->add_option("--crate", c.crate, "maximum charge rate override (C)");
  cmd->add_option("--vmax", c.vmax, "voltage setpoint override (V)");
  cmd->add_option("--dt", c.dt, "controller step override (s)");
  cmd->add_option("--max-time", c.max_time, "simulated time budget (s)");
  cmd->add_option("--target-soc", c.target_soc, "stop at this state of charge");
  cmd->add_option("--cv-cutoff", c.cv_cutoff, "end-of-charge current (C rate)");
}

Protocol parse_protocol(const std::string& name) {
  if (name == "cccv") return Protocol::cccv;
  if (name == "vest" || name == "cccvest") return Protocol::cccvest;
  throw ConfigError("unknown protocol '" + name + "' (use cccv or vest)");
}

Scenario build_scenario(const LoadedConfig& cfg, const CommonOpts& c) {
  Scenario sc;
  sc.protocol = parse_protocol(c.protocol);
  sc.limits = cfg.limits;
  sc.gains = cfg.gains;
  if (!std::isnan(c.crate)) sc.limits.current_max = -c.crate * cfg.cell.capacity_Ah;
  if (!std::isnan(c.vmax)) sc.limits.voltage_max = c.vmax;
  if (!std::isnan(c.dt)) sc.dt = c.dt;
  if (!std::isnan(c.max_time)) sc.max_time = c.max_time;
  if (!std::isnan(c.target_soc)) sc.target_soc = c.target_soc;
  if (!std::isnan(c.cv_cutoff)) sc.cv_cutoff_c_rate = c.cv_cutoff;
  return sc;
}

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json run_summary(const SimResult& r) {
  ordered_json j;
  j["termination"] = to_string(r.termination);
  j["samples"] = r.samples();
  j["charge_time_s"] = {{"soc_0_80", opt_json(charge_time(r, 0.0, 0.8))},
                        {"soc_0_100", opt_json(charge_time(r, 0.0, 1.0))}};
  j["events_s"] = {{"t_plating", opt_json(r.t_plating)},
                   {"t_stress", opt_json(r.t_stress)},
                   {"t_temperature", opt_json(r.t_temperature)},
                   {"t_cv", opt_json(r.t_cv)}};
  j["extrema"] = {{"min_eta_plating_V", r.min_eta_plating},
                  {"max_stress_MPa", r.max_stress * 1e-6},
                  {"max_temperature_C", r.max_temperature - 273.15},
                  {"max_voltage_V", r.max_voltage}};
  return j;
}

ordered_json violation_report(const SimResult& r, const ConstraintLimits& lim) {
  return {{"plating", r.min_eta_plating < lim.eta_plating_min},
          {"stress", r.max_stress > lim.stress_max},
          {"temperature", r.max_temperature > lim.temperature_max},
          {"voltage", r.max_voltage > lim.voltage_max + 1e-6}};
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw SimulationError("cannot open output file '" + path + "'");
  out << j.dump(2) << '\n';
}

int cmd_simulate(const CommonOpts& c) {
  const LoadedConfig cfg = load_config(c.config);
  const Scenario sc = build_scenario(cfg, c);
  const SimResult r = run_charge(sc, cfg.cell, cfg.mech);

  fs::create_directories(c.out);
  write_trajectory_csv(c.out + "/trajectory.csv", r);
  ordered_json j;
  j["protocol"] = to_string(sc.protocol);
  j["run"] = run_summary(r);
  j["violations"] = violation_report(r, sc.limits);
  write_json(c.out + "/summary.json", j);
  std::printf("%s: %zu samples, termination %s -> %s/trajectory.csv\n",
              to_string(sc.protocol).c_str(), r.samples(),
              to_string(r.termination).c_str(), c.out.c_str());
  return 0;
}

int cmd_compare(const CommonOpts& base, const std::string& proto_a,
                const std::string& proto_b) {
  const LoadedConfig cfg = load_config(base.config);

  CommonOpts ca = base;
  ca.protocol = proto_a;
  CommonOpts cb = base;
  cb.protocol = proto_b;
  const Scenario sa = build_scenario(cfg, ca);
  const Scenario sb = build_scenario(cfg, cb);
  const SimResult ra = run_charge(sa, cfg.cell, cfg.mech);
  const SimResult rb = run_charge(sb, cfg.cell, cfg.mech);

  fs::create_directories(base.out);
  write_trajectory_csv(base.out + "/a_" + to_string(sa.protocol) + ".csv", ra);
  write_trajectory_csv(base.out + "/b_" + to_string(sb.protocol) + ".csv", rb);

  ordered_json j;
  j["a"] = {{"protocol", to_string(sa.protocol)}, {"run", run_summary(ra)},
            {"violations", violation_report(ra, sa.limits)}};
  j["b"] = {{"protocol", to_string(sb.protocol)}, {"run", run_summary(rb)},
            {"violations", violation_report(rb, sb.limits)}};
  const auto t80a = charge_time(ra, 0.0, 0.8);
  const auto t80b = charge_time(rb, 0.0, 0.8);
  const auto t100a = charge_time(ra, 0.0, 1.0);
  const auto t100b = charge_time(rb, 0.0, 1.0);
  j["delta_s"] = {
      {"soc_0_80", t80a && t80b ? ordered_json(*t80b - *t80a) : ordered_json(nullptr)},
      {"soc_0_100",
       t100a && t100b ? ordered_json(*t100b - *t100a) : ordered_json(nullptr)}};
  write_json(base.out + "/summary.json", j);
  std::printf("compare %s vs %s -> %s/summary.json\n", to_string(sa.protocol).c_str(),
              to_string(sb.protocol).c_str(), base.out.c_str());
  return 0;
}

int cmd_sweep_gains(const CommonOpts& base, const std::vector<double>& kp_sigma,
                    const std::vector<double>& kp_temp) {
  if (kp_sigma.empty() && kp_temp.empty()) {
    throw ConfigError("sweep lists are empty");
  }
  const LoadedConfig cfg = load_config(base.config);

  struct Row {
    double gain_wire;
    SimResult result;
    std::optional<double> metric;
    std::string csv;
  };
  std::vector<Row> sigma_rows;
  std::vector<Row> temp_rows;
  char name[64];

  CommonOpts cs = base;
  cs.protocol = "vest";
  if (std::isnan(cs.crate)) cs.crate = kStressTuningCRate;
  for (double v : kp_sigma) {
    const Scenario sc = stress_tuning_scenario(build_scenario(cfg, cs), v * 1e-6);
    SimResult r = run_charge(sc, cfg.cell, cfg.mech);
    auto metric = activation_peak_to_peak(r, kPhaseStress, kTuningWindowSeconds);
    std::snprintf(name, sizeof name, "kp_sigma_%g.csv", v);
    sigma_rows.push_back({v, std::move(r), metric, name});
  }

  CommonOpts ct = base;
  ct.protocol = "vest";
  if (std::isnan(ct.crate)) ct.crate = kTemperatureTuningCRate;
  for (double v : kp_temp) {
    const Scenario sc = temperature_tuning_scenario(build_scenario(cfg, ct), v);
    SimResult r = run_charge(sc, cfg.cell, cfg.mech);
    auto metric = activation_peak_to_peak(r, kPhaseTemperature, kTuningWindowSeconds);
    std::snprintf(name, sizeof name, "kp_temp_%g.csv", v);
    temp_rows.push_back({v, std::move(r), metric, name});
  }

  fs::create_directories(base.out);
  ordered_json j;
  j["window_s"] = kTuningWindowSeconds;
  j["kp_sigma"] = ordered_json::array();
  for (const Row& row : sigma_rows) {
    write_trajectory_csv(base.out + "/" + row.csv, row.result);
    j["kp_sigma"].push_back({{"gain_A_per_MPa", row.gain_wire},
                             {"peak_to_peak_A", opt_json(row.metric)},
                             {"csv", row.csv}});
  }
  j["kp_temp"] = ordered_json::array();
  for (const Row& row : temp_rows) {
    write_trajectory_csv(base.out + "/" + row.csv, row.result);
    j["kp_temp"].push_back({{"gain_A_per_K", row.gain_wire},
                            {"peak_to_peak_A", opt_json(row.metric)},
                            {"csv", row.csv}});
  }
  write_json(base.out + "/summary.json", j);
  std::printf("sweep-gains: %zu + %zu runs -> %s/summary.json\n", sigma_rows.size(),
              temp_rows.size(), base.out.c_str());
  return 0;
}

int cmd_sensitivity(const CommonOpts& base, const std::vector<double>& margins,
                    const std::vector<double>& ratios) {
  if (margins.empty() || ratios.empty()) {
    throw ConfigError("margin and ratio lists must be nonempty");
  }
  const LoadedConfig cfg = load_config(base.config);
  CommonOpts c = base;
  c.protocol = "vest";
  const Scenario sc = build_scenario(cfg, c);
  const auto table = sensitivity_sweep(sc, cfg.cell, cfg.mech, margins, ratios);

  fs::create_directories(base.out);
  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const SensitivityPoint& p : table) {
    j["rows"].push_back({{"margin_V", p.margin},
                         {"ratio", p.ratio},
                         {"min_eta_plating_V", p.min_eta_plating},
                         {"below_zero", p.min_eta_plating < 0.0}});
  }
  write_json(base.out + "/summary.json", j);
  std::printf("sensitivity: %zu rows -> %s/summary.json\n", table.size(),
              base.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-loop lithium-ion fast-charge simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "run one charge protocol");
  add_common(simulate, sim_opts, true);

  CommonOpts cmp_opts;
  std::string proto_a = "cccv";
  std::string proto_b = "vest";
  CLI::App* compare = app.add_subcommand("compare", "run two protocols side by side");
  add_common(compare, cmp_opts, false);
  compare->add_option("--a", proto_a, "first protocol")->capture_default_str();
  compare->add_option("--b", proto_b, "second protocol")->capture_default_str();

  CommonOpts sweep_opts;
  std::vector<double> kp_sigma{0.0, 0.1, 1.0};
  std::vector<double> kp_temp{0.0, 50.0, 500.0};
  CLI::App* sweep = app.add_subcommand(
      "sweep-gains",
      "proportional-gain sweeps on single-constraint tuning scenarios "
      "(stress at 12C, temperature at 8C unless --crate is given)");
  add_common(sweep, sweep_opts, false);
  sweep->add_option("--kp-sigma", kp_sigma, "stress gains (A/MPa)")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--kp-temp", kp_temp, "temperature gains (A/K)")
      ->delimiter(',')
      ->capture_default_str();

  CommonOpts sens_opts;
  std::vector<double> margins{0.0, 0.02};
  std::vector<double> ratios{1.0, 0.95, 0.9};
  CLI::App* sens = app.add_subcommand("sensitivity", "plating-margin aging study");
  add_common(sens, sens_opts, false);
  sens->add_option("--margins", margins, "plating setpoints (V)")
      ->delimiter(',')
      ->capture_default_str();
  sens->add_option("--ratios", ratios, "active-material scales")
      ->delimiter(',')
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    if (compare->parsed()) return cmd_compare(cmp_opts, proto_a, proto_b);
    if (sweep->parsed()) return cmd_sweep_gains(sweep_opts, kp_sigma, kp_temp);
    if (sens->parsed()) return cmd_sensitivity(sens_opts, margins, ratios);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
