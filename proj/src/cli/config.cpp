#include "tlsom/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tlsom/error.hpp"
#include "tlsom/units.hpp"

namespace tlsom::cli {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Config Config::parse(const std::string& text, const std::string& source) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(number) + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(number) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty())
    throw ConfigError("override must look like key=value: " + assignment);
  values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> Config::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

namespace {

/// Number (optionally a/b) followed by the unit text.
std::pair<double, std::string> split_number(const std::string& text) {
  const std::string s = trim(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) throw ConfigError("expected a number: `" + text + "`");
  std::string rest = end;
  if (!rest.empty() && rest[0] == '/') {
    const char* db = rest.c_str() + 1;
    char* de = nullptr;
    const double den = std::strtod(db, &de);
    if (de == db || den == 0.0) throw ConfigError("bad fraction: `" + text + "`");
    v /= den;
    rest = de;
  }
  if (!std::isfinite(v)) throw ConfigError("value is not finite: `" + text + "`");
  return {v, trim(rest)};
}

double absolute_scale(const std::string& unit) {
  if (unit == "GHz") return units::angular(1e9);
  if (unit == "MHz") return units::angular(1e6);
  if (unit == "kHz") return units::angular(1e3);
  if (unit == "Hz") return units::angular(1.0);
  if (unit == "rad/s") return 1.0;
  return 0.0;
}

[[noreturn]] void bad_unit(const std::string& unit, const std::string& text) {
  throw ConfigError("unknown or inapplicable unit `" + unit + "` in `" + text + "`");
}

}  // namespace

double parse_absolute_frequency(const std::string& text) {
  const auto [v, unit] = split_number(text);
  const double scale = absolute_scale(unit);
  if (scale == 0.0) bad_unit(unit, text);
  return v * scale;
}

double parse_quantity(const std::string& text, Quantity q, const UnitContext& ctx) {
  const auto [v, unit] = split_number(text);
  switch (q) {
    case Quantity::frequency: {
      if (unit.empty() || unit == "*wm") return v;
      if (unit == "*lambda") {
        if (ctx.lambda <= 0.0) throw ConfigError("`*lambda` is not available here: `" + text + "`");
        return v * ctx.lambda;
      }
      const double scale = absolute_scale(unit);
      if (scale == 0.0) bad_unit(unit, text);
      if (ctx.omega_m_si <= 0.0) throw ConfigError("absolute frequency needs omega_m: `" + text + "`");
      return v * scale / ctx.omega_m_si;
    }
    case Quantity::temperature:
      if (unit.empty() || unit == "K") return v;
      if (unit == "mK") return v * 1e-3;
      if (unit == "uK") return v * 1e-6;
      bad_unit(unit, text);
    case Quantity::volume:
      if (unit.empty() || unit == "m3") return v;
      if (unit == "um3") return v * 1e-18;
      if (unit == "nm3") return v * 1e-27;
      bad_unit(unit, text);
    case Quantity::energy:
      if (unit.empty() || unit == "eV") return v * units::electron_volt;
      if (unit == "J") return v;
      bad_unit(unit, text);
    case Quantity::pressure:
      if (unit.empty() || unit == "Pa") return v;
      if (unit == "GPa") return v * 1e9;
      bad_unit(unit, text);
    case Quantity::field:
      if (unit.empty() || unit == "V/m") return v;
      bad_unit(unit, text);
    case Quantity::dipole:
      if (unit.empty() || unit == "D") return v * units::debye;
      if (unit == "Cm") return v;
      bad_unit(unit, text);
    case Quantity::angle:
      if (unit.empty() || unit == "rad") return v;
      if (unit == "deg") return v * units::two_pi / 360.0;
      bad_unit(unit, text);
    case Quantity::density:
      if (unit.empty() || unit == "J-1m-3") return v;
      bad_unit(unit, text);
    case Quantity::number:
      if (unit.empty()) return v;
      bad_unit(unit, text);
  }
  bad_unit(unit, text);
}

std::vector<double> parse_list(const std::string& text, Quantity q, const UnitContext& ctx) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  if (items.empty() || (items.size() == 1 && items[0].empty())) return {};
  // The unit of the last item applies to every bare item.
  const std::string last_unit = split_number(items.back()).second;
  std::vector<double> out;
  for (const auto& it : items) {
    if (it.empty()) throw ConfigError("empty list element in `" + text + "`");
    const auto [v, unit] = split_number(it);
    (void)v;
    out.push_back(parse_quantity(unit.empty() ? it + " " + last_unit : it, q, ctx));
  }
  return out;
}

}  // namespace tlsom::cli
