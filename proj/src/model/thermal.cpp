#include "tlsom/thermal.hpp"

#include <cmath>
#include <limits>

#include "tlsom/units.hpp"

namespace tlsom {

double bose_occupation_ratio(double x) {
  if (std::isinf(x)) return 0.0;
  return 1.0 / std::expm1(x);
}

double bose_occupation(double omega_si, double kelvin) {
  if (kelvin <= 0.0) return 0.0;
  return bose_occupation_ratio(units::hbar * omega_si / (units::boltzmann * kelvin));
}

}  // namespace tlsom
