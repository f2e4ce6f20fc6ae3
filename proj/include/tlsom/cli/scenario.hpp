#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsom/cli/config.hpp"
#include "tlsom/params.hpp"
#include "tlsom/protocols/state_prep.hpp"
#include "tlsom/secular.hpp"

namespace tlsom::cli {

/// Inputs of the coupling estimate (SI units).
struct CouplingInputs {
  std::string field_file;             ///< strain-field export; empty uses mode_volume
  double mode_volume = 0.0;           ///< V_m [m^3]
  double youngs_modulus = 0.0;        ///< E [Pa]; 0 takes the field file's material
  double deformation_potential = 0.0; ///< D_T [J]
  double delta0_ratio = 1.0;          ///< Delta_0 / Delta_T
  double tls_volume = 0.0;            ///< V_T [m^3]; 0 skips N_T
  double spectral_density = 1e45;     ///< P-bar [1/(J m^3)]
  double u0 = 0.7;
  double field = 0.0;                 ///< |E_0| [V/m], aligned with the dipole
  double dipole = 0.0;                ///< |p| [C m]
};

struct Scenario {
  std::string preset;
  SystemParams params;
  CouplingInputs coupling;
  bool lambda_from_coupling = false;

  std::vector<double> temperatures;  ///< [K]
  double span = 0.0;                 ///< half-width of each spectrum window, units of omega_m
  int points = 801;
  Sidebands sidebands = Sidebands::blue;
  int n_b = 0;                       ///< engine cutoff; 0 selects the default rule
  double wmu_min = 0.0, wmu_max = 0.0;
  int wmu_steps = 101;
  std::vector<int> ms;
  Realism realism = Realism::instantaneous;
  double t_low = 0.01, t_high = 10.0;  ///< crossover bracket [K]
  double rel_tol = 1e-3;
  std::uint64_t seed = 0;              ///< recorded only; every solver is deterministic
  bool strict = false;

  /// Canonical config that resolves to exactly this scenario.
  Config resolved;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
Config preset_config(const std::string& name);

/// Applies defaults then `config`. Throws ConfigError for unknown keys, bad
/// values or parameters failing validation.
Scenario resolve_scenario(const Config& config);

}  // namespace tlsom::cli
