#pragma once

namespace tlsom {

/// Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1) for an angular
/// frequency in rad/s and a temperature in kelvin. Exactly zero at T = 0.
double bose_occupation(double omega_si, double kelvin);

/// Same, in terms of the dimensionless ratio x = hbar omega / k_B T.
double bose_occupation_ratio(double x);

}  // namespace tlsom
