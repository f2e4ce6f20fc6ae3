#include <algorithm>
#include <cmath>

#include "tlsom/cli/app.hpp"
#include "tlsom/coupling.hpp"
#include "tlsom/engine/correlation.hpp"
#include "tlsom/error.hpp"
#include "tlsom/protocols/blockade.hpp"
#include "tlsom/protocols/state_prep.hpp"
#include "tlsom/secular.hpp"
#include "tlsom/units.hpp"

namespace tlsom::cli {

namespace fs = std::filesystem;

namespace {

void add_warnings(Warnings& into, const Warnings& from) {
  for (const auto& w : from) {
    const bool seen = std::any_of(into.begin(), into.end(), [&](const Warning& x) { return x.code == w.code; });
    if (!seen) into.push_back(w);
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

std::string codes(const Warnings& w) {
  if (w.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].code;
  return s;
}

/// Per-temperature peak normalization of T,omega,S rows.
std::vector<std::vector<double>> normalized(std::vector<std::vector<double>> rows) {
  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin;
    double peak = 0.0;
    while (end < rows.size() && rows[end][0] == rows[begin][0]) peak = std::max(peak, rows[end++][2]);
    if (peak > 0.0)
      for (std::size_t i = begin; i < end; ++i) rows[i][2] /= peak;
    begin = end;
  }
  return rows;
}

}  // namespace

std::vector<double> spectrum_grid(const Scenario& s) {
  std::vector<double> grid;
  auto window = [&](double center) {
    for (double x : linspace(center - s.span, center + s.span, s.points)) grid.push_back(x);
  };
  if (s.sidebands != Sidebands::blue) window(-1.0);
  if (s.sidebands != Sidebands::red) window(1.0);
  return grid;
}

RunOutput run_coupling(const Scenario& s, const fs::path& dir) {
  const CouplingInputs& c = s.coupling;
  const double w = s.params.omega_m_si;
  KeyValues kv;
  kv.emplace_back("omega_m_hz", format_double(units::hertz(w)));
  double volume = c.mode_volume;
  double modulus = c.youngs_modulus;
  if (!c.field_file.empty()) {
    const StrainField field = load_strain_field(c.field_file);
    const ModeVolume mv = mode_volume(field);
    volume = mv.volume;
    if (modulus <= 0.0) modulus = field.material.youngs_modulus;
    kv.emplace_back("samples", std::to_string(field.samples.size()));
    kv.emplace_back("total_volume_m3", format_double(field.total_volume()));
    kv.emplace_back("max_strain_contraction", format_double(mv.max_contraction));
    kv.emplace_back("x0_m", format_double(mv.max_position[0]) + " " + format_double(mv.max_position[1]) + " " +
                                format_double(mv.max_position[2]));
  }
  if (!(volume > 0.0)) throw ConfigError("coupling needs a field file or a mode volume Vm");
  if (!(modulus > 0.0)) throw ConfigError("coupling needs a Young's modulus E");
  if (!(c.deformation_potential > 0.0)) throw ConfigError("coupling needs a deformation potential DT");
  if (!(c.delta0_ratio > 0.0 && c.delta0_ratio <= 1.0)) throw ConfigError("delta0_ratio must lie in (0, 1]");
  const double szpf = zero_point_strain(w, modulus, volume);
  TLSParams tls;
  tls.deformation_potential = c.deformation_potential;
  tls.tunnel_splitting = w;
  const double lambda_max = tls_coupling(tls, szpf);
  tls.tunnel_splitting = c.delta0_ratio * w;
  tls.asymmetry = w * std::sqrt(1.0 - c.delta0_ratio * c.delta0_ratio);
  const double lambda = tls_coupling(tls, szpf);
  kv.emplace_back("youngs_modulus_pa", format_double(modulus));
  kv.emplace_back("mode_volume_m3", format_double(volume));
  kv.emplace_back("mode_volume_um3", format_double(volume * 1e18));
  kv.emplace_back("zero_point_strain", format_double(szpf));
  kv.emplace_back("deformation_potential_ev", format_double(c.deformation_potential / units::electron_volt));
  kv.emplace_back("delta0_ratio", format_double(c.delta0_ratio));
  kv.emplace_back("lambda_max_hz", format_double(units::hertz(lambda_max)));
  kv.emplace_back("lambda_hz", format_double(units::hertz(lambda)));
  kv.emplace_back("lambda_rad_s", format_double(lambda));
  kv.emplace_back("lambda_over_omega_m", format_double(lambda / w));
  if (c.tls_volume > 0.0) {
    kv.emplace_back("tls_volume_m3", format_double(c.tls_volume));
    kv.emplace_back("spectral_density", format_double(c.spectral_density));
    kv.emplace_back("u0", format_double(c.u0));
    kv.emplace_back("tls_count", format_double(tls_count(lambda_max, c.tls_volume, c.spectral_density, c.u0)));
  }
  if (c.field > 0.0 && c.dipole > 0.0) {
    // Dipole aligned with the field.
    tls.dipole = {c.dipole, 0.0, 0.0};
    const TuningShifts t = electric_tuning(tls, {c.field, 0.0, 0.0}, lambda);
    kv.emplace_back("field_v_per_m", format_double(c.field));
    kv.emplace_back("dipole_debye", format_double(c.dipole / units::debye));
    kv.emplace_back("shift_asymmetry_hz", format_double(units::hertz(t.asymmetry)));
    kv.emplace_back("shift_splitting_hz", format_double(units::hertz(t.splitting)));
    kv.emplace_back("shift_lambda_hz", format_double(units::hertz(t.coupling)));
  }
  RunOutput out;
  out.files.push_back(dir / "coupling.txt");
  write_key_values(out.files.back(), kv);
  return out;
}

RunOutput run_spectrum(const Scenario& s, const fs::path& dir) {
  const std::vector<double> grid = spectrum_grid(s);
  RunOutput out;
  std::vector<std::vector<double>> rows;
  for (double t : s.temperatures) {
    const Spectrum sp = spectrum(s.params.with_temperature(t), grid, s.sidebands);
    add_warnings(out.warnings, sp.warnings);
    for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({t, grid[i], sp.values[i]});
    out.notes.emplace_back("rung_cutoff_T" + format_double(t), std::to_string(sp.populations.n_max()));
  }
  out.notes.emplace_back("population_tail_tol", "1e-8");
  out.files.push_back(dir / "spectrum.csv");
  write_csv(out.files.back(), {"T", "omega", "S"}, rows);
  out.files.push_back(dir / "spectrum_normalized.csv");
  write_csv(out.files.back(), {"T", "omega", "S"}, normalized(rows));
  return out;
}

RunOutput run_fullspectrum(const Scenario& s, const fs::path& dir) {
  const std::vector<double> grid = spectrum_grid(s);
  RunOutput out;
  std::vector<std::vector<double>> rows;
  CorrelationOptions o;
  o.n_b = s.n_b;
  o.sidebands = s.sidebands;
  for (double t : s.temperatures) {
    const NumericSpectrum sp = correlation_spectrum(s.params.with_temperature(t), grid, o);
    add_warnings(out.warnings, sp.warnings);
    for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({t, grid[i], sp.values[i]});
    out.notes.emplace_back("fock_cutoff_T" + format_double(t), std::to_string(sp.n_b));
    out.notes.emplace_back("cutoff_change_T" + format_double(t), format_double(sp.cutoff_change));
  }
  out.notes.emplace_back("cutoff_tolerance", format_double(o.tolerance));
  out.files.push_back(dir / "fullspectrum.csv");
  write_csv(out.files.back(), {"T", "omega", "S"}, rows);
  out.files.push_back(dir / "fullspectrum_normalized.csv");
  write_csv(out.files.back(), {"T", "omega", "S"}, normalized(rows));
  return out;
}

RunOutput run_crossover(const Scenario& s, const fs::path& dir) {
  RunOutput out;
  const CrossoverEstimate a = crossover_T_analytic(s.params);
  const CrossoverEstimate n = crossover_T_numeric(s.params, s.t_low, s.t_high, {s.rel_tol});
  add_warnings(out.warnings, a.warnings);
  add_warnings(out.warnings, n.warnings);
  KeyValues kv;
  kv.emplace_back("Tc_analytic_K", format_double(a.temperature));
  kv.emplace_back("nc_analytic", format_double(a.bath_occupation));
  kv.emplace_back("Tc_numeric_K", format_double(n.temperature));
  kv.emplace_back("nc_numeric", format_double(n.bath_occupation));
  kv.emplace_back("N_numeric", std::to_string(n.dominant_index));
  kv.emplace_back("numeric_already_merged", n.already_merged ? "true" : "false");
  kv.emplace_back("numeric_vs_analytic", format_double(n.temperature / a.temperature - 1.0));
  try {
    const CrossoverEstimate d = crossover_T_dip(s.params, s.t_low, s.t_high, {s.rel_tol});
    kv.emplace_back("Tc_dip_K", format_double(d.temperature));
  } catch (const SolverError& e) {
    kv.emplace_back("Tc_dip_K", "unavailable");
    out.warnings.push_back({"crossover.dip", e.what()});
  }
  kv.emplace_back("regime_flags_analytic", codes(a.warnings));
  kv.emplace_back("regime_flags_numeric", codes(n.warnings));
  out.notes.emplace_back("bisection_rel_tol", format_double(s.rel_tol));
  out.files.push_back(dir / "crossover.txt");
  write_key_values(out.files.back(), kv);
  return out;
}

RunOutput run_g2map(const Scenario& s, const fs::path& dir) {
  const std::vector<double> wmu = linspace(s.wmu_min, s.wmu_max, s.wmu_steps);
  BlockadeOptions o;
  o.n_b = s.n_b;
  const BlockadeScan scan = blockade_scan(s.params, wmu, s.temperatures, o);
  RunOutput out;
  add_warnings(out.warnings, scan.warnings);
  add_warnings(out.warnings, regime_flags(s.params).warnings());
  std::vector<std::vector<double>> rows, detail;
  for (const auto& p : scan.points) {
    rows.push_back({p.wmu, p.temperature, p.g2c, p.g2m});
    detail.push_back({p.wmu, p.temperature, p.g2c, p.g2c0, p.g2m, double(p.n_b), p.cutoff_change});
  }
  out.notes.emplace_back("cutoff_tolerance", format_double(o.tolerance));
  out.files.push_back(dir / "g2map.csv");
  write_csv(out.files.back(), {"wmu", "T", "g2c", "g2m"}, rows);
  out.files.push_back(dir / "g2map_detail.csv");
  write_csv(out.files.back(), {"wmu", "T", "g2c", "g2c0", "g2m", "nb", "cutoff_change"}, detail);
  return out;
}

RunOutput run_stateprep(const Scenario& s, const fs::path& dir) {
  SimulationOptions o;
  o.realism = s.realism;
  o.n_b = s.n_b;
  const auto curve = fidelity_curve(s.params, s.ms, s.temperatures, o);
  RunOutput out;
  add_warnings(out.warnings, regime_flags(s.params).warnings());
  std::vector<std::vector<double>> rows, detail;
  for (const auto& p : curve) {
    rows.push_back({double(p.m), p.temperature, p.fidelity_resonator});
    detail.push_back({double(p.m), p.temperature, p.fidelity_resonator, p.fidelity_joint});
  }
  out.notes.emplace_back("fidelity", "resonator-reduced (TLS traced out)");
  out.files.push_back(dir / "stateprep.csv");
  write_csv(out.files.back(), {"M", "T", "fidelity"}, rows);
  out.files.push_back(dir / "stateprep_detail.csv");
  write_csv(out.files.back(), {"M", "T", "fidelity_resonator", "fidelity_joint"}, detail);
  return out;
}

}  // namespace tlsom::cli
