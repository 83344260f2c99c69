// SPDX-License-Identifier: Apache-2.0
#include "cellsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"

namespace cellsim {

namespace {

constexpr char kHeader[] = "t_s,I_A,V_V,SOC,eta_pl_V,sigma_MPa,T_C,phase";

std::size_t keep_stride(const SimResult& r, double max_hz) {
  if (r.samples() < 2 || !(max_hz > 0)) return 1;
  const double dt = r.time[1] - r.time[0];
  const double stride = 1.0 / (max_hz * dt);
  return stride <= 1.0 ? 1 : static_cast<std::size_t>(std::llround(stride));
}

}  // namespace

void write_trajectory_csv(const std::string& path, const SimResult& r, double max_hz) {
  std::ofstream out(path);
  if (!out) throw SimulationError("cannot open output file '" + path + "'");
  out << kHeader << '\n';

  const std::size_t stride = keep_stride(r, max_hz);
  const std::size_t n = r.samples();
  char buf[320];
  for (std::size_t k = 0; k < n; ++k) {
    if (k % stride != 0 && k != n - 1) continue;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  r.time[k], r.current[k], r.voltage[k], r.soc[k], r.eta_plating[k],
                  r.stress[k] * 1e-6, kelvin_to_celsius(r.temperature[k]), r.phase[k]);
    out << buf;
  }
  if (!out) throw SimulationError("short write to '" + path + "'");
}

TrajectoryCsv read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimulationError("cannot open trajectory file '" + path + "'");

  TrajectoryCsv t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != kHeader) {
        throw SimulationError(path + ": unexpected header '" + line + "'");
      }
      continue;
    }
    double cols[7];
    int phase = 0;
    const char* p = line.c_str();
    char* end = nullptr;
    bool ok = true;
    for (double& c : cols) {
      c = std::strtod(p, &end);
      ok = ok && end != p && *end == ',';
      p = end + 1;
    }
    phase = static_cast<int>(std::strtol(p, &end, 10));
    ok = ok && end != p && *end == '\0';
    if (!ok) {
      char msg[64];
      std::snprintf(msg, sizeof msg, ": bad row at line %d", lineno);
      throw SimulationError(path + msg);
    }
    t.time.push_back(cols[0]);
    t.current.push_back(cols[1]);
    t.voltage.push_back(cols[2]);
    t.soc.push_back(cols[3]);
    t.eta_plating.push_back(cols[4]);
    t.stress_mpa.push_back(cols[5]);
    t.temperature_c.push_back(cols[6]);
    t.phase.push_back(phase);
  }
  return t;
}

}  // namespace cellsim
