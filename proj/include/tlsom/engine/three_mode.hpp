#pragma once

#include "tlsom/engine/liouvillian.hpp"
#include "tlsom/engine/quantum_state.hpp"

namespace tlsom {

/// Validation model with the cavity kept explicitly (frame of the laser,
/// linearized coupling g (a + a^dag)(b + b^dag), bare mechanical bath).
/// Basis index (n_a * n_b + n) * 2 + s. Limited to n_a <= 4, n_b <= 6.
Liouvillian build_three_mode_liouvillian(const SystemParams& params, int n_a, int n_b);

struct ThreeModeResult {
  double cavity_occupation = 0.0;  ///< <a^dag a>
  double mech_occupation = 0.0;    ///< <b^dag b>
  QuantumState state;
};

ThreeModeResult three_mode_steady_state(const SystemParams& params, int n_a, int n_b);

}  // namespace tlsom
