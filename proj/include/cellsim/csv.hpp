// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cellsim/sim_engine.hpp"

namespace cellsim {

// Columns of an on-disk trajectory. Stress is written in MPa and temperature
// in Celsius; the in-memory SimResult keeps SI.
struct TrajectoryCsv {
  std::vector<double> time;
  std::vector<double> current;
  std::vector<double> voltage;
  std::vector<double> soc;
  std::vector<double> eta_plating;
  std::vector<double> stress_mpa;
  std::vector<double> temperature_c;
  std::vector<int> phase;

  std::size_t rows() const { return time.size(); }
};

// Writes header `t_s,I_A,V_V,SOC,eta_pl_V,sigma_MPa,T_C,phase` and one row per
// kept sample with %.17g formatting. Samples are thinned to at most max_hz
// rows per simulated second; the final sample is always kept.
void write_trajectory_csv(const std::string& path, const SimResult& r,
                          double max_hz = 10.0);

TrajectoryCsv read_trajectory_csv(const std::string& path);

}  // namespace cellsim
