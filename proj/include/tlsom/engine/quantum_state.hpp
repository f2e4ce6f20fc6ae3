#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tlsom/engine/operators.hpp"

namespace tlsom {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Density matrix with the physicality checks used throughout the engine.
class QuantumState {
 public:
  explicit QuantumState(DenseMatrix rho);
  /// Rebuilds rho from column-major vec(rho).
  static QuantumState from_vec(const DenseVector& v, int dim);
  static QuantumState pure(const DenseVector& psi);

  const DenseMatrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  DenseVector vec() const;

  double hermiticity_error() const;  ///< max |rho - rho^dag|
  double trace_error() const;        ///< |Tr rho - 1|
  double min_eigenvalue() const;
  /// Throws DomainError when any invariant fails.
  void check(double hermitian_tol = 1e-12, double trace_tol = 1e-10, double positivity_tol = 1e-10) const;

  cplx expectation(const SparseMatrix& op) const;  ///< Tr(op rho)
  double fidelity(const DenseVector& psi) const;   ///< <psi|rho|psi>

 private:
  DenseMatrix rho_;
};

/// Symmetrizes and renormalizes. Used after numerical solves.
QuantumState physical_part(const DenseMatrix& rho);

/// Truncated Bose distribution of the resonator times a thermal TLS.
QuantumState thermal_state(int n_b, double mech_occupation, double tls_occupation);
QuantumState fock_state(int n_b, int n, int tls = 0);
/// Coherent resonator state renormalized on the truncation, TLS in ground.
QuantumState coherent_state(int n_b, cplx alpha);

/// Resonator density matrix with the TLS traced out.
DenseMatrix resonator_reduced(const QuantumState& state);

/// Change of the observables listed in `a` versus `b` (max absolute difference).
double max_change(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tlsom
