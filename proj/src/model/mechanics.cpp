#include "tlsom/mechanics.hpp"

#include "tlsom/error.hpp"

namespace tlsom {

EffectiveMechanics cooling_rates(const SystemParams& p) {
  if (!(p.cavity_decay > 0.0)) throw DomainError("cooling_rates: kappa must be positive");
  EffectiveMechanics m;
  const double g2 = p.om_coupling * p.om_coupling;
  const double half = 0.5 * p.cavity_decay;
  const double dm = p.laser_detuning + 1.0;  // Delta_L + omega_m
  const double dp = p.laser_detuning - 1.0;  // Delta_L - omega_m
  m.cooling_rate = g2 * p.cavity_decay / (half * half + dm * dm);
  m.heating_rate = g2 * p.cavity_decay / (half * half + dp * dp);
  m.cooling_rate_resolved = 4.0 * g2 / p.cavity_decay;
  m.heating_rate_resolved = g2 * p.cavity_decay / 4.0;
  m.mech_bath = p.mech_occupation();
  m.tls_bath = p.tls_occupation();
  m.damping = p.mech_damping + m.cooling_rate - m.heating_rate;
  m.occupation = (m.mech_bath * p.mech_damping + m.heating_rate) / m.damping;
  if (!(m.damping > 0.0))
    m.warnings.push_back({"cooling.unstable", "effective mechanical damping is not positive"});
  return m;
}

}  // namespace tlsom
