// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cellsim/controller.hpp"
#include "cellsim/mechanics.hpp"
#include "cellsim/parameters.hpp"

namespace cellsim {

// Minimal TOML-style document: `[section]` / `[a.b]` headers, `key = value`
// pairs with numeric, quoted-string, numeric-array and pair-array values,
// `#` comments, and arrays continued across lines. Keys are exposed fully
// dotted ("cell.negative.radii"). Parse errors carry file and line.
class ConfigDoc {
 public:
  using Value = std::variant<double, std::string, std::vector<double>,
                             std::vector<std::array<double, 2>>>;

  static ConfigDoc parse_file(const std::string& path);
  static ConfigDoc parse_string(const std::string& text,
                                const std::string& name = "<string>");

  bool has(const std::string& key) const;
  bool is_string(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string string_value(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::array<double, 2>> pairs(const std::string& key) const;

  // Directory of the parsed file, for paths given relative to it.
  const std::string& dir() const { return dir_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return values_.size(); }

 private:
  const Value& get(const std::string& key) const;

  std::map<std::string, Value> values_;
  std::string dir_;
  std::string name_;
};

// Everything a simulation needs from one parameter file. Gains and limits are
// converted to SI on load (stress MPa -> Pa, temperatures Celsius -> K,
// C rate -> amps against the nominal capacity).
struct LoadedConfig {
  CellParameters cell;
  MechanicalParameters mech;
  ControllerGains gains;
  ConstraintLimits limits;
};

LoadedConfig load_config(const std::string& path);
LoadedConfig load_config(const ConfigDoc& doc);

// Two-column (x, value) CSV with optional `#` comments and a non-numeric
// header row. Used for the lookup tables referenced from parameter files.
Table1D read_table_csv(const std::string& path);

}  // namespace cellsim
