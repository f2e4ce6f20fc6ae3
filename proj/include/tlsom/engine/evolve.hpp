#pragma once

#include <span>
#include <vector>

#include "tlsom/engine/liouvillian.hpp"
#include "tlsom/engine/quantum_state.hpp"

namespace tlsom {

enum class EvolveMethod { automatic, exact, adaptive };

struct EvolveOptions {
  EvolveMethod method = EvolveMethod::automatic;
  double rtol = 1e-10;
  double atol = 1e-12;
  /// automatic uses the dense matrix exponential up to this many vec entries.
  Eigen::Index exact_limit = 400;
  /// Smallest accepted step relative to max(1, |t|).
  double min_step = 1e-13;
};

/// vec(rho(t)) = exp(L t) vec(rho0) for a single time t >= 0.
DenseVector propagate(const Liouvillian& l, const DenseVector& rho0, double t, const EvolveOptions& options = {});

/// States at every time of `t_grid` (non-decreasing, >= 0, measured from rho0).
/// Throws SolverError on step-size underflow.
std::vector<QuantumState> evolve(const QuantumState& rho0, const Liouvillian& l, std::span<const double> t_grid,
                                 const EvolveOptions& options = {});

}  // namespace tlsom
