#pragma once

#include <vector>

#include "tlsom/engine/operators.hpp"
#include "tlsom/params.hpp"

namespace tlsom {

/// Reference frame of the Hamiltonian. `rotating(w)` subtracts w times the
/// total excitation number.
struct Frame {
  bool rotating = false;
  double frequency = 0.0;
  static Frame lab() { return {}; }
  static Frame rotating_at(double w) { return {true, w}; }
  double offset() const { return rotating ? frequency : 0.0; }
};

/// Mechanical bath: optically cooled (gamma_bar, n_bar) or bare (gamma_m, nm).
enum class MechanicsModel { optomechanical, bare };

/// lindblad: dissipators on b, b^dag, sigma_-, sigma_+. secular: jumps
/// between ladder eigenstates with the secular rates (no drive allowed).
enum class DissipatorModel { lindblad, secular };

struct LiouvillianOptions {
  Frame frame = Frame::lab();
  MechanicsModel mechanics = MechanicsModel::optomechanical;
  DissipatorModel dissipators = DissipatorModel::lindblad;
};

struct Dissipator {
  SparseMatrix op;
  double rate = 0.0;
};

/// Superoperator acting on column-major vec(rho) (element (i, j) at i + d j).
struct Liouvillian {
  SparseMatrix matrix;
  int dim = 0;                  ///< Hilbert-space dimension d
  Frame frame;
  bool driven = false;
  /// Excitation label per basis state; empty when L has no excitation symmetry.
  std::vector<int> excitation;
};

/// Builds -i[H, .] + sum_k r_k D[c_k]. Pass `excitation` labels only if every
/// term conserves the label difference of the two density-matrix indices.
Liouvillian make_liouvillian(const SparseMatrix& hamiltonian, const std::vector<Dissipator>& dissipators,
                             std::vector<int> excitation = {});

/// Resonator-TLS Hamiltonian in `frame` (drive terms only in a rotating frame).
SparseMatrix system_hamiltonian(const SystemParams& params, const Operators& ops, const Frame& frame);

std::vector<Dissipator> system_dissipators(const SystemParams& params, const Operators& ops,
                                           MechanicsModel mechanics, DissipatorModel model);

/// Effective master equation on n_b Fock levels. Throws DomainError for a
/// drive in the lab frame or a secular dissipator with drive.
Liouvillian build_liouvillian(const SystemParams& params, int n_b, const LiouvillianOptions& options = {});

/// Max |sum_i L_{(ii),col}| over all columns: the adjoint applied to the identity.
double trace_defect(const Liouvillian& l);

/// Block of L on the vec indices (i, j) with excitation(i) - excitation(j) = k.
struct Sector {
  int k = 0;
  std::vector<Eigen::Index> members;  ///< global vec indices, ascending
  std::vector<Eigen::Index> local;    ///< global -> local, -1 outside
  SparseMatrix block;
};

/// Throws DomainError if L has no excitation labels or couples the sector outward.
Sector sector(const Liouvillian& l, int k);

}  // namespace tlsom
