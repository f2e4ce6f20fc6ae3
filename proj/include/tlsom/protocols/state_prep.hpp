#pragma once

#include <span>
#include <vector>

#include "tlsom/engine/evolve.hpp"
#include "tlsom/engine/quantum_state.hpp"
#include "tlsom/params.hpp"

namespace tlsom {

enum class SegmentKind { tls_rotation, free_jc, stark_detune, detune_off };

/// One piecewise-constant step. Times in units of 1 / omega_m.
struct PulseSegment {
  SegmentKind kind = SegmentKind::free_jc;
  double duration = 0.0;
  double angle = 0.0;  ///< tls_rotation: theta = 2 |Omega| t; stark_detune: accumulated phase of |e>
  double phase = 0.0;  ///< tls_rotation: drive phase arg(Omega)
};

struct SequenceOptions {
  double drive_strength = 0.0;  ///< |Omega_mu| of rotations; 0 selects lambda / kMuchLess
  double stark_shift = 0.0;     ///< TLS shift of Stark segments; 0 selects lambda / kMuchLess
};

struct PulseSequence {
  std::vector<PulseSegment> segments;  ///< forward order, starting from |0, g>
  DenseVector target;                  ///< Fock amplitudes, normalized
  int max_fock = 0;                    ///< M, highest occupied Fock level
  double coupling = 0.0;               ///< lambda used for the free-evolution times
  double drive_strength = 0.0;
  double stark_shift = 0.0;
  double residual = 0.0;               ///< 1 - ideal fidelity
};

/// (|0> + |M>) / sqrt(2).
DenseVector superposition_target(int m);

/// Backward-evolution construction from target x |g> down to |0, g>. Throws
/// DomainError for an empty or unnormalized target or non-positive lambda.
PulseSequence law_eberly_sequence(std::span<const cplx> target, double coupling, const SequenceOptions& options = {});

/// 2x2 drive propagator for rotation angle theta and drive phase phi (basis g, e).
Eigen::Matrix2cd tls_rotation(double theta, double phi);

/// Dissipation-free, instantaneous-rotation action of the sequence on |0, g>,
/// on n_b Fock levels (n_b > M).
DenseVector apply_ideal(const PulseSequence& seq, int n_b);

enum class Realism { instantaneous, finite_drive };

struct SimulationOptions {
  Realism realism = Realism::instantaneous;
  int n_b = 0;               ///< 0 selects max(M + 2, default cutoff at T)
  bool check_states = true;  ///< physicality check at every segment boundary
  EvolveOptions evolve = EvolveOptions{EvolveMethod::adaptive, 1e-9, 1e-12, 400, 1e-13};
};

struct SimulationResult {
  QuantumState final_state;        ///< frame rotating at omega_m
  double fidelity_joint = 0.0;     ///< <target, g| rho |target, g>
  double fidelity_resonator = 0.0; ///< <target| Tr_TLS rho |target>
  double initial_ground = 0.0;     ///< <0, g| rho_0 |0, g> after optical cooling
  int n_b = 0;
  std::size_t boundaries_checked = 0;
};

/// Cooled steady state at T, then the segments with the optomechanical
/// interaction off (bare gamma_m, nm) and TLS dissipation on.
SimulationResult simulate_sequence(const PulseSequence& seq, const SystemParams& params, double kelvin,
                                   const SimulationOptions& options = {});

struct FidelityPoint {
  int m = 0;
  double temperature = 0.0;
  double fidelity_resonator = 0.0;
  double fidelity_joint = 0.0;
};

/// Fidelity of the (|0> + |M>) / sqrt(2) preparation over an (M, T) grid, in parallel.
std::vector<FidelityPoint> fidelity_curve(const SystemParams& params, std::span<const int> ms,
                                          std::span<const double> temperatures,
                                          const SimulationOptions& options = {},
                                          const SequenceOptions& sequence = {});

}  // namespace tlsom
