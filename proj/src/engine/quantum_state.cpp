#include "tlsom/engine/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tlsom/error.hpp"

namespace tlsom {

QuantumState::QuantumState(DenseMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw DomainError("density matrix must be square");
}

QuantumState QuantumState::from_vec(const DenseVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw DomainError("vec size does not match dimension");
  return QuantumState(Eigen::Map<const DenseMatrix>(v.data(), dim, dim));
}

QuantumState QuantumState::pure(const DenseVector& psi) { return QuantumState(psi * psi.adjoint()); }

DenseVector QuantumState::vec() const { return Eigen::Map<const DenseVector>(rho_.data(), rho_.size()); }

double QuantumState::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double QuantumState::trace_error() const { return std::abs(rho_.trace() - cplx(1.0, 0.0)); }

double QuantumState::min_eigenvalue() const {
  const DenseMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void QuantumState::check(double hermitian_tol, double trace_tol, double positivity_tol) const {
  if (hermiticity_error() > hermitian_tol)
    throw DomainError("state is not Hermitian: " + std::to_string(hermiticity_error()));
  if (trace_error() > trace_tol) throw DomainError("state trace deviates from 1: " + std::to_string(trace_error()));
  if (min_eigenvalue() < -positivity_tol)
    throw DomainError("state has a negative eigenvalue: " + std::to_string(min_eigenvalue()));
}

cplx QuantumState::expectation(const SparseMatrix& op) const {
  // Tr(op rho) = sum_{ij} op_ij rho_ji
  cplx s = 0.0;
  for (Eigen::Index col = 0; col < op.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(op, col); it; ++it) s += it.value() * rho_(col, it.row());
  return s;
}

double QuantumState::fidelity(const DenseVector& psi) const { return (psi.adjoint() * rho_ * psi)(0, 0).real(); }

QuantumState physical_part(const DenseMatrix& rho) {
  DenseMatrix h = 0.5 * (rho + rho.adjoint());
  const cplx tr = h.trace();
  if (std::abs(tr) == 0.0) throw SolverError("state has zero trace");
  h /= tr.real();
  return QuantumState(std::move(h));
}

QuantumState thermal_state(int n_b, double nm, double nt) {
  const HilbertSpace space(n_b);
  if (nm < 0.0 || nt < 0.0) throw DomainError("thermal_state: occupations must be non-negative");
  const double r = nm / (nm + 1.0);
  double z = 0.0, w = 1.0;
  std::vector<double> p(static_cast<std::size_t>(n_b));
  for (int n = 0; n < n_b; ++n, w *= r) z += (p[n] = w);
  const double pe = nt / (2.0 * nt + 1.0);
  DenseMatrix rho = DenseMatrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < n_b; ++n) {
    rho(HilbertSpace::index(n, 0), HilbertSpace::index(n, 0)) = p[n] / z * (1.0 - pe);
    rho(HilbertSpace::index(n, 1), HilbertSpace::index(n, 1)) = p[n] / z * pe;
  }
  return QuantumState(std::move(rho));
}

QuantumState fock_state(int n_b, int n, int tls) {
  const HilbertSpace space(n_b);
  if (n < 0 || n >= n_b || (tls != 0 && tls != 1)) throw DomainError("fock_state: level outside truncation");
  DenseVector psi = DenseVector::Zero(space.dim());
  psi(HilbertSpace::index(n, tls)) = 1.0;
  return QuantumState::pure(psi);
}

QuantumState coherent_state(int n_b, cplx alpha) {
  const HilbertSpace space(n_b);
  DenseVector psi = DenseVector::Zero(space.dim());
  cplx amp = 1.0;
  for (int n = 0; n < n_b; ++n) {
    psi(HilbertSpace::index(n, 0)) = amp;
    amp *= alpha / std::sqrt(double(n + 1));
  }
  psi.normalize();
  return QuantumState::pure(psi);
}

DenseMatrix resonator_reduced(const QuantumState& state) {
  const int n_b = state.dim() / 2;
  DenseMatrix r(n_b, n_b);
  const DenseMatrix& rho = state.matrix();
  for (int m = 0; m < n_b; ++m)
    for (int n = 0; n < n_b; ++n)
      r(m, n) = rho(HilbertSpace::index(m, 0), HilbertSpace::index(n, 0)) +
                rho(HilbertSpace::index(m, 1), HilbertSpace::index(n, 1));
  return r;
}

double max_change(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DomainError("max_change: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace tlsom
