// SPDX-License-Identifier: Apache-2.0
#include "cellsim/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"

namespace cellsim {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, ":%d: ", line);
  throw ConfigError(name + buf + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Cut a trailing comment, respecting double quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

int bracket_balance(const std::string& s) {
  int bal = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '[') ++bal;
    if (c == ']') --bal;
  }
  return bal;
}

bool valid_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  const std::string& file;
  int line;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c, const char* what) {
    if (!at(c)) fail(file, line, std::string("expected ") + what);
    ++pos;
  }
  double number() {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(file, line, "expected a number");
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }
};

// '[' elem (',' elem)* ','? ']' where elem is a number or a two-number pair.
ConfigDoc::Value parse_array(Cursor& c) {
  c.expect('[', "'['");
  std::vector<double> nums;
  std::vector<std::array<double, 2>> pairs;
  while (!c.at(']')) {
    if (c.at('[')) {
      ++c.pos;
      std::array<double, 2> p{};
      p[0] = c.number();
      c.expect(',', "',' in pair");
      p[1] = c.number();
      c.expect(']', "']' after pair");
      pairs.push_back(p);
    } else {
      nums.push_back(c.number());
    }
    if (c.at(',')) ++c.pos;
  }
  ++c.pos;  // closing ']'
  if (!nums.empty() && !pairs.empty()) fail(c.file, c.line, "mixed array element types");
  if (!pairs.empty()) return pairs;
  return nums;
}

ConfigDoc::Value parse_value(const std::string& raw, const std::string& file, int line) {
  const std::string v = trim(raw);
  if (v.empty()) fail(file, line, "missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(file, line, "unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v.front() == '[') {
    Cursor c{v, 0, file, line};
    ConfigDoc::Value out = parse_array(c);
    c.skip_ws();
    if (c.pos != v.size()) fail(file, line, "trailing characters after array");
    return out;
  }
  Cursor c{v, 0, file, line};
  const double num = c.number();
  c.skip_ws();
  if (c.pos != v.size()) fail(file, line, "trailing characters after number");
  return num;
}

std::string dir_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string join_path(const std::string& dir, const std::string& leaf) {
  if (!leaf.empty() && leaf.front() == '/') return leaf;
  return dir + "/" + leaf;
}

}  // namespace

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ConfigDoc doc = parse_string(ss.str(), path);
  doc.dir_ = dir_of(path);
  return doc;
}

ConfigDoc ConfigDoc::parse_string(const std::string& text, const std::string& name) {
  ConfigDoc doc;
  doc.name_ = name;
  doc.dir_ = ".";

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const int start_line = lineno;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;

    if (body.front() == '[' && bracket_balance(body) == 0 && body.back() == ']' &&
        body.find('=') == std::string::npos) {
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty()) fail(name, start_line, "empty section name");
      for (char c : section) {
        if (!valid_key_char(c)) fail(name, start_line, "bad section name '" + section + "'");
      }
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) fail(name, start_line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) fail(name, start_line, "empty key");
    for (char c : key) {
      if (!valid_key_char(c)) fail(name, start_line, "bad key '" + key + "'");
    }
    std::string value = body.substr(eq + 1);

    // Arrays may continue on following lines until brackets balance.
    while (bracket_balance(value) > 0) {
      std::string more;
      if (!std::getline(in, more)) fail(name, start_line, "unterminated array");
      ++lineno;
      value += ' ';
      value += trim(strip_comment(more));
    }

    const std::string full = section.empty() ? key : section + "." + key;
    if (doc.values_.count(full)) fail(name, start_line, "duplicate key '" + full + "'");
    doc.values_.emplace(full, parse_value(value, name, start_line));
  }
  return doc;
}

bool ConfigDoc::has(const std::string& key) const { return values_.count(key) != 0; }

bool ConfigDoc::is_string(const std::string& key) const {
  const auto it = values_.find(key);
  return it != values_.end() && std::holds_alternative<std::string>(it->second);
}

const ConfigDoc::Value& ConfigDoc::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(name_ + ": missing key '" + key + "'");
  return it->second;
}

double ConfigDoc::number(const std::string& key) const {
  const Value& v = get(key);
  if (!std::holds_alternative<double>(v)) {
    throw ConfigError(name_ + ": key '" + key + "' is not a number");
  }
  return std::get<double>(v);
}

double ConfigDoc::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string ConfigDoc::string_value(const std::string& key) const {
  const Value& v = get(key);
  if (!std::holds_alternative<std::string>(v)) {
    throw ConfigError(name_ + ": key '" + key + "' is not a string");
  }
  return std::get<std::string>(v);
}

std::vector<double> ConfigDoc::numbers(const std::string& key) const {
  const Value& v = get(key);
  if (!std::holds_alternative<std::vector<double>>(v)) {
    throw ConfigError(name_ + ": key '" + key + "' is not a numeric array");
  }
  return std::get<std::vector<double>>(v);
}

std::vector<std::array<double, 2>> ConfigDoc::pairs(const std::string& key) const {
  const Value& v = get(key);
  if (!std::holds_alternative<std::vector<std::array<double, 2>>>(v)) {
    throw ConfigError(name_ + ": key '" + key + "' is not an array of pairs");
  }
  return std::get<std::vector<std::array<double, 2>>>(v);
}

Table1D read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file '" + path + "'");
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) fail(path, lineno, "expected 'x,value'");
    char* end = nullptr;
    const std::string xs_txt = trim(body.substr(0, comma));
    const std::string ys_txt = trim(body.substr(comma + 1));
    const double x = std::strtod(xs_txt.c_str(), &end);
    const bool x_ok = end == xs_txt.c_str() + xs_txt.size() && !xs_txt.empty();
    const double y = std::strtod(ys_txt.c_str(), &end);
    const bool y_ok = end == ys_txt.c_str() + ys_txt.size() && !ys_txt.empty();
    if (!x_ok || !y_ok) {
      if (xs.empty() && lineno == 1) continue;  // header row
      fail(path, lineno, "expected two numbers");
    } else {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  if (xs.empty()) throw ConfigError(path + ": table has no rows");
  return Table1D(std::move(xs), std::move(ys));
}

namespace {

// A table is either a CSV path or an inline [[x, v], ...] array.
Table1D load_table(const ConfigDoc& doc, const std::string& key) {
  if (doc.is_string(key)) {
    return read_table_csv(join_path(doc.dir(), doc.string_value(key)));
  }
  const auto rows = doc.pairs(key);
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (const auto& r : rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  return Table1D(std::move(xs), std::move(ys));
}

ElectrodeParameters load_electrode(const ConfigDoc& doc, const std::string& prefix) {
  ElectrodeParameters e;
  e.thickness = doc.number(prefix + ".thickness");
  e.active_fraction = doc.number(prefix + ".active_fraction");
  e.porosity = doc.number(prefix + ".porosity");
  e.rate_constant = doc.number(prefix + ".rate_constant");
  e.film_resistance = doc.number_or(prefix + ".film_resistance", 0.0);
  e.radii = doc.numbers(prefix + ".radii");
  e.fractions = doc.numbers(prefix + ".fractions");
  e.diffusivities = doc.numbers(prefix + ".diffusivities");
  e.c_maxes = doc.numbers(prefix + ".c_maxes");
  e.stoich_soc0 = doc.number(prefix + ".stoich_soc0");
  e.stoich_soc100 = doc.number(prefix + ".stoich_soc100");
  e.ocp = load_table(doc, prefix + ".ocp");
  e.entropy = load_table(doc, prefix + ".entropy");
  const std::size_t n = e.radii.size();
  if (e.fractions.size() != n || e.diffusivities.size() != n || e.c_maxes.size() != n) {
    throw ConfigError(doc.name() + ": size-class arrays under '" + prefix +
                      "' have mismatched lengths");
  }
  return e;
}

}  // namespace

LoadedConfig load_config(const ConfigDoc& doc) {
  LoadedConfig out;

  CellParameters& cell = out.cell;
  cell.neg = load_electrode(doc, "cell.negative");
  cell.pos = load_electrode(doc, "cell.positive");
  cell.elec.c_init = doc.number("cell.electrolyte.c_init");
  cell.elec.diffusivity = doc.number("cell.electrolyte.diffusivity");
  cell.elec.conductivity = doc.number("cell.electrolyte.conductivity");
  cell.elec.transference = doc.number("cell.electrolyte.transference");
  cell.elec.thermo_factor = doc.number("cell.electrolyte.thermo_factor");
  cell.elec.bruggeman = doc.number_or("cell.electrolyte.bruggeman", 1.5);
  cell.thermal.heat_capacity_area = doc.number("thermal.heat_capacity_area");
  cell.thermal.h_conv = doc.number("thermal.h_conv");
  cell.thermal.t_ambient = celsius_to_kelvin(doc.number("thermal.t_ambient_c"));
  cell.separator_thickness = doc.number("cell.separator_thickness");
  cell.separator_porosity = doc.number("cell.separator_porosity");
  cell.area = doc.number("cell.area");
  cell.capacity_Ah = doc.number("cell.capacity_Ah");
  cell.alpha_a = doc.number_or("cell.alpha_a", 0.5);
  cell.alpha_c = doc.number_or("cell.alpha_c", 0.5);
  cell.plating_exchange_current = doc.number_or("cell.plating_exchange_current", 1.0);
  cell.radial_shells = static_cast<int>(doc.number_or("cell.radial_shells", 30));
  cell.electrolyte_cells = static_cast<int>(doc.number_or("cell.electrolyte_cells", 20));

  out.mech.youngs_modulus = doc.number("mechanics.youngs_modulus");
  out.mech.poissons_ratio = doc.number("mechanics.poissons_ratio");
  out.mech.strain = load_table(doc, "mechanics.strain");

  // Wire units follow the published table (MPa, Celsius, C rate); the structs
  // hold SI throughout.
  ControllerGains& g = out.gains;
  g.k_i_voltage = doc.number("gains.k_i_voltage");
  g.k_i_plating = doc.number("gains.k_i_plating");
  g.k_i_stress = doc.number("gains.k_i_stress") * 1e-6;
  g.k_p_stress = doc.number("gains.k_p_stress") * 1e-6;
  g.k_i_temperature = doc.number("gains.k_i_temperature");
  g.k_p_temperature = doc.number("gains.k_p_temperature");
  g.k_anti_windup = doc.number("gains.k_anti_windup");

  ConstraintLimits& lim = out.limits;
  lim.eta_plating_min = doc.number("limits.eta_plating_min");
  lim.stress_max = doc.number("limits.stress_max_mpa") * 1e6;
  lim.temperature_max = celsius_to_kelvin(doc.number("limits.temperature_max_c"));
  lim.voltage_max = doc.number("limits.voltage_max");
  lim.current_max = -doc.number("limits.max_c_rate") * cell.capacity_Ah;

  out.cell.validate();
  out.mech.validate();
  out.gains.validate();
  out.limits.validate();
  return out;
}

LoadedConfig load_config(const std::string& path) {
  return load_config(ConfigDoc::parse_file(path));
}

}  // namespace cellsim
