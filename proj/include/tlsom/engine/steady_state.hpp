#pragma once

#include <string>

#include "tlsom/engine/liouvillian.hpp"
#include "tlsom/engine/quantum_state.hpp"

namespace tlsom {

enum class SteadyStateMethod { automatic, direct, iterative };

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::automatic;
  double residual_tol = 1e-10;
  /// Restrict to the zero-excitation-difference sector when L allows it.
  bool use_symmetry = true;
  /// automatic picks the direct solve up to this many unknowns.
  Eigen::Index direct_limit = 40000;
  int max_iterations = 20000;
  double iterative_tol = 1e-14;
};

struct SteadyStateResult {
  QuantumState state;
  double residual = 0.0;  ///< ||L vec(rho)||_2
  std::string method;
  int iterations = 0;
};

/// Unique null vector of L with unit trace. Throws SolverError for a
/// degenerate null space, a failed factorization or a residual above tolerance.
SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& options = {});

}  // namespace tlsom
