#include "tlsom/params.hpp"

#include <cmath>
#include <limits>

#include "tlsom/error.hpp"
#include "tlsom/thermal.hpp"
#include "tlsom/units.hpp"

namespace tlsom {

double SystemParams::thermal_scale() const { return units::hbar * omega_m_si / units::boltzmann; }

double SystemParams::occupation_at(double omega) const {
  if (temperature <= 0.0) return 0.0;
  return bose_occupation_ratio(omega * thermal_scale() / temperature);
}

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(std::string(name) + " must be strictly positive and finite");
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ConfigError(std::string(name) + " must be finite");
}

}  // namespace

void SystemParams::validate() const {
  require_positive(omega_m_si, "omega_m");
  require_finite(detuning, "detuning");
  require_positive(tls_splitting(), "Delta_T");
  require_positive(tls_coupling, "lambda");
  require_positive(om_coupling, "g");
  require_positive(cavity_decay, "kappa");
  require_finite(laser_detuning, "Delta_L");
  require_positive(mech_damping, "gamma_m");
  require_positive(tls_decay, "gamma_T");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw ConfigError("temperature must be non-negative and finite");
  require_finite(drive.real(), "Omega_mu");
  require_finite(drive.imag(), "Omega_mu");
  require_positive(drive_frequency, "omega_mu");
}

RegimeFlags regime_flags(const SystemParams& p) {
  RegimeFlags f;
  const double nm = p.mech_occupation();
  const double nt = p.tls_occupation();
  const double fast = kMuchLess * p.cavity_decay;
  f.adiabatic = p.om_coupling <= fast && p.tls_decay * (nt + 1.0) <= fast &&
                p.mech_damping * (nm + 1.0) <= fast;
  f.narrow = std::abs(p.detuning) <= p.tls_coupling && p.tls_coupling <= fast;
  f.weak_drive = std::abs(p.drive) <= kMuchLess * p.tls_coupling * (1.0 + 1e-12);
  f.rotating_wave = p.tls_coupling <= 0.1;
  return f;
}

Warnings RegimeFlags::warnings() const {
  Warnings w;
  if (!adiabatic)
    w.push_back({"regime.adiabatic", "cavity decay does not dominate g, gamma_T(nT+1), gamma_m(nm+1)"});
  if (!narrow) w.push_back({"regime.narrow", "condition |detuning| <= lambda << kappa violated"});
  if (!weak_drive) w.push_back({"regime.weak_drive", "microwave drive not weak compared to lambda"});
  if (!rotating_wave)
    w.push_back({"regime.rotating_wave", "lambda exceeds 0.1 omega_m; rotating-wave approximation doubtful"});
  return w;
}

}  // namespace tlsom
