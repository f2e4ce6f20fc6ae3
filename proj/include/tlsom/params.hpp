#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tlsom {

/// Structured, non-fatal diagnostic attached to a result.
struct Warning {
  std::string code;
  std::string message;
};
using Warnings = std::vector<Warning>;

/// Ratio used for every "much smaller than" regime test: a << b means a <= kMuchLess * b.
inline constexpr double kMuchLess = 0.1;

/// Physical parameters of the cavity / resonator / defect system.
///
/// Every frequency and rate is an angular frequency expressed in units of the
/// mechanical frequency, so `1.0` is omega_m; `omega_m_si` carries the scale
/// in rad/s. Conversion to SI happens only at the I/O boundary.
struct SystemParams {
  double omega_m_si = 0.0;      ///< mechanical angular frequency [rad/s]
  double detuning = 0.0;        ///< omega_m - Delta_T
  double tls_coupling = 0.0;    ///< lambda
  double om_coupling = 0.0;     ///< linearized optomechanical coupling g
  double cavity_decay = 0.0;    ///< kappa (energy decay)
  double laser_detuning = 0.0;  ///< Delta_L = omega_L - omega_c
  double mech_damping = 0.0;    ///< gamma_m
  double tls_decay = 0.0;       ///< gamma_T
  double temperature = 0.0;     ///< bath temperature [K]
  std::complex<double> drive{0.0, 0.0};  ///< microwave Rabi frequency Omega_mu
  double drive_frequency = 1.0;          ///< omega_mu

  double tls_splitting() const { return 1.0 - detuning; }

  /// hbar omega_m / k_B in kelvin.
  double thermal_scale() const;

  /// Bose occupation of a bath mode at `omega` (units of omega_m) and `temperature`.
  double occupation_at(double omega) const;
  double mech_occupation() const { return occupation_at(1.0); }
  double tls_occupation() const { return occupation_at(tls_splitting()); }

  SystemParams with_temperature(double kelvin) const {
    SystemParams p = *this;
    p.temperature = kelvin;
    return p;
  }

  /// Throws ConfigError unless all rates and frequencies except the laser
  /// detuning, the TLS detuning and the drive are strictly positive. The
  /// temperature may be zero.
  void validate() const;
};

/// Regime conditions under which the effective models hold.
struct RegimeFlags {
  bool adiabatic = true;      ///< kappa >> g, gamma_T (nT+1), gamma_m (nm+1)
  bool narrow = true;         ///< |detuning| <= lambda and lambda << kappa
  bool weak_drive = true;     ///< |Omega_mu| << lambda
  bool rotating_wave = true;  ///< lambda <= 0.1 omega_m

  Warnings warnings() const;
};

RegimeFlags regime_flags(const SystemParams& params);

}  // namespace tlsom
