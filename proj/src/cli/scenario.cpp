#include "tlsom/cli/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "tlsom/coupling.hpp"
#include "tlsom/error.hpp"
#include "tlsom/units.hpp"

namespace tlsom::cli {

namespace {

const char* const kFig2a =
    "omega_m = 5 GHz\n"
    "kappa = 0.1 *wm\n"
    "lambda = 2e-3 *wm\n"
    "gamma_m = 6e-6 *wm\n"
    "g = 1 *lambda\n"
    "gammaT = 1/10 *lambda\n"
    "deltaL = -1 *wm\n"
    "detuning = 0\n";

// Unlisted rates of the Table I structures follow the Fig. 2(a) ratios and
// the typical values quoted with the table.
const char* const kTable1Rates =
    "kappa = 0.1 *wm\n"
    "g = 1 *lambda\n"
    "gammaT = 1 MHz\n"
    "gamma_m = 10 kHz\n"
    "deltaL = -1 *wm\n"
    "detuning = 0\n"
    "DT = 1.4 eV\n"
    "delta0_ratio = 1\n"
    "Pbar = 1e45\n"
    "u0 = 0.7\n"
    "lambda = auto\n";

const std::set<std::string> kKeys = {
    "preset", "omega_m", "kappa", "lambda", "gamma_m", "g", "gammaT", "gammaT_ratio", "deltaL", "detuning", "T",
    "drive", "drive_phase", "Tlist", "Tmin", "Tmax", "Tsteps", "span", "points", "sidebands", "nb", "wmu_min",
    "wmu_max", "wmu_steps", "M", "realism", "Tlow", "Thigh", "rel_tol", "seed", "strict", "field", "Vm", "E",
    "DT", "delta0_ratio", "VT", "Pbar", "u0", "E0", "dipole"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v, const std::string& unit) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return unit.empty() || v.empty() ? s : s + " " + unit;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_quantity(text, Quantity::number);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + " must be an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key + " must be true or false");
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3", "fig4-dashed", "fig4-solid", "table1-nanobeam", "table1-microsphere"};
}

Config preset_config(const std::string& name) {
  std::string text;
  if (name == "fig2a") {
    text = std::string(kFig2a) + "Tlist = 0.05, 0.5, 1.0 K\n";
  } else if (name == "fig2b") {
    text = std::string(kFig2a) + "g = 1/10 *lambda\ngammaT = 1/30 *lambda\nTlist = 0.05, 1.0, 2.0 K\n";
  } else if (name == "fig3") {
    text = std::string(kFig2a) + "drive = 1/10 *lambda\nTlist = 0.01, 0.1, 0.3, 1.0 K\n";
  } else if (name == "fig4-dashed") {
    text = std::string(kFig2a) + "M = 1, 2, 3\nTlist = 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0 K\n";
  } else if (name == "fig4-solid") {
    text = std::string(kFig2a) + "gammaT = 1/30 *lambda\nM = 1, 2, 3, 4, 7, 9\n" +
           "Tlist = 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0 K\n";
  } else if (name == "table1-nanobeam") {
    text = std::string("omega_m = 5.0 GHz\nVm = 0.01 um3\nE = 170 GPa\n") + kTable1Rates + "Tlist = 0.05 K\n";
  } else if (name == "table1-microsphere") {
    text = std::string("omega_m = 0.46 GHz\nVm = 13.46 um3\nVT = 13.46 um3\nE = 73 GPa\n") + kTable1Rates +
           "Tlist = 0.05 K\n";
  } else {
    throw ConfigError("unknown preset `" + name + "`");
  }
  Config c = Config::parse(text, "preset " + name);
  c.set("preset", name);
  return c;
}

Scenario resolve_scenario(const Config& input) {
  for (const auto& [k, v] : input.entries())
    if (!kKeys.count(k)) throw ConfigError("unknown config key `" + k + "`");
  Config cfg;
  if (auto p = input.find("preset"); p && !p->empty() && *p != "none") cfg = preset_config(*p);
  cfg.merge(input);

  auto get = [&](const std::string& key, const std::string& fallback) {
    return cfg.find(key).value_or(fallback);
  };
  auto require = [&](const std::string& key) {
    auto v = cfg.find(key);
    if (!v) throw ConfigError("missing required parameter `" + key + "`");
    return *v;
  };

  Scenario s;
  s.preset = get("preset", "none");
  SystemParams& p = s.params;
  p.omega_m_si = parse_absolute_frequency(require("omega_m"));
  UnitContext ctx{p.omega_m_si, 0.0};

  CouplingInputs& c = s.coupling;
  c.field_file = get("field", "");
  if (auto v = cfg.find("Vm")) c.mode_volume = parse_quantity(*v, Quantity::volume);
  if (auto v = cfg.find("E")) c.youngs_modulus = parse_quantity(*v, Quantity::pressure);
  if (auto v = cfg.find("DT")) c.deformation_potential = parse_quantity(*v, Quantity::energy);
  c.delta0_ratio = parse_quantity(get("delta0_ratio", "1"), Quantity::number);
  if (auto v = cfg.find("VT")) c.tls_volume = parse_quantity(*v, Quantity::volume);
  c.spectral_density = parse_quantity(get("Pbar", "1e45"), Quantity::density);
  c.u0 = parse_quantity(get("u0", "0.7"), Quantity::number);
  c.field = parse_quantity(get("E0", "0"), Quantity::field);
  c.dipole = parse_quantity(get("dipole", "0"), Quantity::dipole);

  const std::string lambda_text = require("lambda");
  if (lambda_text == "auto") {
    s.lambda_from_coupling = true;
    double volume = c.mode_volume;
    double modulus = c.youngs_modulus;
    if (!c.field_file.empty()) {
      const StrainField field = load_strain_field(c.field_file);
      volume = mode_volume(field).volume;
      if (modulus <= 0.0) modulus = field.material.youngs_modulus;
    }
    if (!(volume > 0.0) || !(modulus > 0.0) || !(c.deformation_potential > 0.0))
      throw ConfigError("lambda = auto needs Vm (or field), E and DT");
    TLSParams tls;
    tls.tunnel_splitting = c.delta0_ratio * p.omega_m_si;
    tls.asymmetry = p.omega_m_si * std::sqrt(std::max(0.0, 1.0 - c.delta0_ratio * c.delta0_ratio));
    tls.deformation_potential = c.deformation_potential;
    p.tls_coupling = tls_coupling(tls, zero_point_strain(p.omega_m_si, modulus, volume)) / p.omega_m_si;
  } else {
    p.tls_coupling = parse_quantity(lambda_text, Quantity::frequency, ctx);
  }
  ctx.lambda = p.tls_coupling;

  p.cavity_decay = parse_quantity(require("kappa"), Quantity::frequency, ctx);
  p.mech_damping = parse_quantity(require("gamma_m"), Quantity::frequency, ctx);
  p.om_coupling = parse_quantity(require("g"), Quantity::frequency, ctx);
  p.tls_decay = parse_quantity(require("gammaT"), Quantity::frequency, ctx);
  if (auto r = cfg.find("gammaT_ratio")) {
    const double ratio = parse_quantity(*r, Quantity::number);
    if (!(ratio > 0.0)) throw ConfigError("gammaT_ratio must be positive");
    p.tls_decay = p.tls_coupling / ratio;
  }
  p.laser_detuning = parse_quantity(get("deltaL", "-1 *wm"), Quantity::frequency, ctx);
  p.detuning = parse_quantity(get("detuning", "0"), Quantity::frequency, ctx);
  const double drive = parse_quantity(get("drive", "0"), Quantity::frequency, ctx);
  const double phase = parse_quantity(get("drive_phase", "0"), Quantity::angle);
  if (drive < 0.0) throw ConfigError("drive amplitude must be non-negative");
  p.drive = std::polar(drive, phase);
  p.temperature = parse_quantity(get("T", "0.05"), Quantity::temperature);

  // A range given by the caller replaces the preset's temperature list.
  const bool range = input.has("Tmin") || input.has("Tmax") || input.has("Tsteps");
  if (auto v = cfg.find("Tlist"); v && !(range && !input.has("Tlist"))) {
    s.temperatures = parse_list(*v, Quantity::temperature);
  } else if (range) {
    const double lo = parse_quantity(require("Tmin"), Quantity::temperature);
    const double hi = parse_quantity(require("Tmax"), Quantity::temperature);
    const int n = parse_int("Tsteps", require("Tsteps"));
    if (n < 1) throw ConfigError("Tsteps must be at least 1");
    for (int i = 0; i < n; ++i) s.temperatures.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    s.temperatures = {p.temperature};
  }
  for (double t : s.temperatures)
    if (!(t >= 0.0)) throw ConfigError("temperatures must be non-negative");

  s.span = parse_quantity(get("span", "4 *lambda"), Quantity::frequency, ctx);
  s.points = parse_int("points", get("points", "801"));
  if (s.points < 0) throw ConfigError("points must be non-negative");
  const std::string sb = get("sidebands", "blue");
  if (sb == "blue") s.sidebands = Sidebands::blue;
  else if (sb == "red") s.sidebands = Sidebands::red;
  else if (sb == "both") s.sidebands = Sidebands::both;
  else throw ConfigError("sidebands must be blue, red or both");
  s.n_b = parse_int("nb", get("nb", "0"));
  if (s.n_b != 0 && s.n_b < 2) throw ConfigError("nb must be 0 (automatic) or at least 2");
  s.wmu_min = parse_quantity(get("wmu_min", "1 *wm"), Quantity::frequency, ctx);
  s.wmu_max = parse_quantity(get("wmu_max", "1 *wm"), Quantity::frequency, ctx);
  if (!cfg.has("wmu_min")) s.wmu_min = 1.0 - 2.0 * p.tls_coupling;
  if (!cfg.has("wmu_max")) s.wmu_max = 1.0 + 2.0 * p.tls_coupling;
  s.wmu_steps = parse_int("wmu_steps", get("wmu_steps", "101"));
  if (s.wmu_steps < 0) throw ConfigError("wmu_steps must be non-negative");
  for (double m : parse_list(get("M", "1"), Quantity::number)) {
    if (m != std::floor(m) || m < 1 || m > 20) throw ConfigError("M must be integers in [1, 20]");
    s.ms.push_back(static_cast<int>(m));
  }
  const std::string realism = get("realism", "instantaneous");
  if (realism == "instantaneous") s.realism = Realism::instantaneous;
  else if (realism == "finite") s.realism = Realism::finite_drive;
  else throw ConfigError("realism must be instantaneous or finite");
  s.t_low = parse_quantity(get("Tlow", "0.01 K"), Quantity::temperature);
  s.t_high = parse_quantity(get("Thigh", "10 K"), Quantity::temperature);
  if (!(s.t_low > 0.0 && s.t_high > s.t_low)) throw ConfigError("need 0 < Tlow < Thigh");
  s.rel_tol = parse_quantity(get("rel_tol", "1e-3"), Quantity::number);
  if (!(s.rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  s.seed = static_cast<std::uint64_t>(parse_int("seed", get("seed", "0")));
  s.strict = parse_bool("strict", get("strict", "false"));

  p.validate();

  // Canonical form, every frequency in units of omega_m.
  Config& r = s.resolved;
  r.set("preset", "none");
  r.set("omega_m", num(p.omega_m_si) + " rad/s");
  r.set("lambda", num(p.tls_coupling) + " *wm");
  r.set("kappa", num(p.cavity_decay) + " *wm");
  r.set("gamma_m", num(p.mech_damping) + " *wm");
  r.set("g", num(p.om_coupling) + " *wm");
  r.set("gammaT", num(p.tls_decay) + " *wm");
  r.set("deltaL", num(p.laser_detuning) + " *wm");
  r.set("detuning", num(p.detuning) + " *wm");
  r.set("drive", num(std::abs(p.drive)) + " *wm");
  r.set("drive_phase", num(phase) + " rad");
  r.set("T", num(p.temperature) + " K");
  r.set("Tlist", join(s.temperatures, "K"));
  r.set("span", num(s.span) + " *wm");
  r.set("points", std::to_string(s.points));
  r.set("sidebands", sb);
  r.set("nb", std::to_string(s.n_b));
  r.set("wmu_min", num(s.wmu_min) + " *wm");
  r.set("wmu_max", num(s.wmu_max) + " *wm");
  r.set("wmu_steps", std::to_string(s.wmu_steps));
  std::vector<double> ms(s.ms.begin(), s.ms.end());
  r.set("M", join(ms, ""));
  r.set("realism", realism);
  r.set("Tlow", num(s.t_low) + " K");
  r.set("Thigh", num(s.t_high) + " K");
  r.set("rel_tol", num(s.rel_tol));
  r.set("seed", std::to_string(s.seed));
  r.set("strict", s.strict ? "true" : "false");
  if (!c.field_file.empty()) r.set("field", c.field_file);
  if (c.mode_volume > 0.0) r.set("Vm", num(c.mode_volume) + " m3");
  if (c.youngs_modulus > 0.0) r.set("E", num(c.youngs_modulus) + " Pa");
  if (c.deformation_potential > 0.0) r.set("DT", num(c.deformation_potential) + " J");
  r.set("delta0_ratio", num(c.delta0_ratio));
  if (c.tls_volume > 0.0) r.set("VT", num(c.tls_volume) + " m3");
  r.set("Pbar", num(c.spectral_density));
  r.set("u0", num(c.u0));
  r.set("E0", num(c.field) + " V/m");
  r.set("dipole", num(c.dipole) + " Cm");
  return s;
}

}  // namespace tlsom::cli
