#pragma once

#include <complex>

#include <Eigen/Sparse>

namespace tlsom {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// Truncated resonator (Fock 0..n_b-1) times TLS; basis index 2n + s with
/// s = 0 for ground and s = 1 for excited.
class HilbertSpace {
 public:
  explicit HilbertSpace(int fock_levels);
  int fock_levels() const { return n_b_; }
  int dim() const { return 2 * n_b_; }
  static int index(int n, int s) { return 2 * n + s; }
  static int fock(int i) { return i / 2; }
  static int tls(int i) { return i % 2; }
  /// Total excitation number n + s of basis state i.
  static int excitation(int i) { return i / 2 + i % 2; }

 private:
  int n_b_;
};

struct Operators {
  HilbertSpace space;
  SparseMatrix b, bdag, sigma_minus, sigma_plus, sigma_z, identity;
};

/// Throws DomainError for n_b < 2.
Operators build_operators(int n_b);

SparseMatrix adjoint(const SparseMatrix& m);

}  // namespace tlsom
