#pragma once

#include <array>
#include <vector>

#include "tlsom/params.hpp"

namespace tlsom {

/// Upper (+) or lower (-) state of a Jaynes-Cummings doublet.
enum class Branch { plus = 0, minus = 1 };

inline constexpr std::array<Branch, 2> kBranches{Branch::plus, Branch::minus};

constexpr double sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }
constexpr int idx(Branch b) { return static_cast<int>(b); }

/// Exact eigensystem of the resonator-defect Jaynes-Cummings Hamiltonian up to
/// rung `n_max`, with the transition matrix elements of b and sigma_minus.
///
/// Rung n >= 1 holds |n a> = C_{na} |n,g> + S_{na} |n-1,e>; the ground state
/// is |0+> = |0,g> and |0-> does not exist (its coefficients are zero).
/// Energies are measured from the ground state, in units of omega_m.
class JCLadder {
 public:
  JCLadder(double detuning, double coupling, int n_max);

  int n_max() const { return n_max_; }
  double detuning() const { return detuning_; }
  double coupling() const { return coupling_; }

  /// Omega_n = sqrt(detuning^2 + 4 n lambda^2).
  double splitting(int n) const;
  double energy(int n, Branch a) const { return energy_[slot(n, a)]; }
  double c(int n, Branch a) const { return c_[slot(n, a)]; }
  double s(int n, Branch a) const { return s_[slot(n, a)]; }

  /// <(n-1) b| b |n a>, zero for n = 1, b = minus.
  double b_element(int n, Branch a, Branch b) const { return b_[tslot(n, a, b)]; }
  /// <(n-1) b| sigma_minus |n a>.
  double sigma_element(int n, Branch a, Branch b) const { return sigma_[tslot(n, a, b)]; }
  /// omega_{n a b} = omega_{n a} - omega_{(n-1) b}.
  double transition_frequency(int n, Branch a, Branch b) const {
    return energy(n, a) - energy(n - 1, b);
  }
  /// True if the transition exists (n >= 2, or n = 1 into the ground state).
  static bool exists(int n, Branch /*a*/, Branch b) { return n >= 2 || (n == 1 && b == Branch::plus); }

  const Warnings& warnings() const { return warnings_; }

 private:
  int slot(int n, Branch a) const;
  int tslot(int n, Branch a, Branch b) const;

  double detuning_;
  double coupling_;
  int n_max_;
  std::vector<double> energy_, c_, s_;
  std::vector<double> b_, sigma_;
  Warnings warnings_;
};

/// Builds the ladder for the detuning and coupling of `params`. Throws
/// DomainError for n_max < 1; flags lambda > 0.1 omega_m.
JCLadder jc_eigensystem(const SystemParams& params, int n_max);

}  // namespace tlsom
