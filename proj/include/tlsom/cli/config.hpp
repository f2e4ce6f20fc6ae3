#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tlsom::cli {

/// Line-based `key = value [unit]` store. `#` starts a comment.
class Config {
 public:
  /// Throws ConfigError on a line without `=` or an empty key.
  static Config parse(const std::string& text, const std::string& source = "config");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void erase(const std::string& key) { values_.erase(key); }
  /// `key=value`; throws ConfigError when malformed.
  void apply_override(const std::string& assignment);
  /// Entries of `other` replace ours.
  void merge(const Config& other);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> find(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class Quantity { frequency, temperature, volume, energy, pressure, field, dipole, angle, density, number };

/// Scales for the relative frequency units `*wm` and `*lambda`.
struct UnitContext {
  double omega_m_si = 0.0;  ///< rad/s; 0 means relative units are unavailable
  double lambda = 0.0;      ///< units of omega_m; 0 means `*lambda` is unavailable
};

/// Frequencies come back in units of omega_m (bare numbers already are);
/// other quantities in SI, energies in joules, temperatures in kelvin.
/// Accepts `a/b` fractions. Throws ConfigError on bad numbers or units.
double parse_quantity(const std::string& text, Quantity q, const UnitContext& ctx = {});

/// Absolute angular frequency in rad/s (GHz, MHz, kHz, Hz or rad/s).
double parse_absolute_frequency(const std::string& text);

/// Comma-separated list sharing one trailing unit, e.g. `0.01, 0.1, 1 K`.
std::vector<double> parse_list(const std::string& text, Quantity q, const UnitContext& ctx = {});

std::string trim(const std::string& s);

}  // namespace tlsom::cli
