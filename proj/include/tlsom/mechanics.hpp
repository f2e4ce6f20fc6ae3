#pragma once

#include "tlsom/params.hpp"

namespace tlsom {

/// Mechanical damping and occupation after adiabatic elimination of the cavity.
struct EffectiveMechanics {
  double cooling_rate = 0.0;   ///< A^(-)
  double heating_rate = 0.0;   ///< A^(+)
  double damping = 0.0;        ///< gamma_m + A^(-) - A^(+)
  double occupation = 0.0;     ///< (nm gamma_m + A^(+)) / damping
  double mech_bath = 0.0;      ///< nm at omega_m
  double tls_bath = 0.0;       ///< nT at Delta_T
  double cooling_rate_resolved = 0.0;  ///< 4 g^2 / kappa
  double heating_rate_resolved = 0.0;  ///< g^2 kappa / (4 omega_m^2)
  Warnings warnings;
};

/// Optically induced cooling and heating rates and the resulting effective
/// mechanical bath. A non-positive effective damping is flagged, not thrown.
EffectiveMechanics cooling_rates(const SystemParams& params);

}  // namespace tlsom
