#pragma once

#include <span>
#include <vector>

#include "tlsom/engine/liouvillian.hpp"
#include "tlsom/engine/quantum_state.hpp"
#include "tlsom/secular.hpp"

namespace tlsom {

/// a ~ blue * b + red * b^dag after adiabatic elimination of the cavity
/// (frame of the laser, noise dropped).
struct AdiabaticCoefficients {
  cplx blue;  ///< -i g / (kappa/2 - i (omega_m + Delta_L))
  cplx red;   ///< -i g / (kappa/2 + i (omega_m - Delta_L))
};

AdiabaticCoefficients adiabatic_coefficients(const SystemParams& params);

/// max(20, ceil(10 (nm + 1))).
int default_cutoff(const SystemParams& params);

struct CorrelationOptions {
  int n_b = 0;                 ///< 0 selects default_cutoff
  bool converge = true;        ///< double n_b until the spectrum is stable
  double tolerance = 1e-6;     ///< max change relative to the peak
  int max_n_b = 640;
  Sidebands sidebands = Sidebands::both;
  DissipatorModel dissipators = DissipatorModel::lindblad;
};

struct NumericSpectrum {
  std::vector<double> grid;    ///< omega - omega_L
  std::vector<double> values;
  int n_b = 0;
  double cutoff_change = 0.0;  ///< relative change of the last doubling (0 if not converged)
  double cavity_occupation = 0.0;  ///< <a^dag a> from the steady state
  Warnings warnings;
};

/// Cavity output spectrum from the quantum regression theorem, one resolvent
/// solve per grid point in the +-1 excitation sectors. Requires no drive.
NumericSpectrum correlation_spectrum(const SystemParams& params, std::span<const double> grid,
                                     const CorrelationOptions& options = {});

/// Same at a fixed cutoff, reusing a steady state of the matching Liouvillian.
std::vector<double> correlation_spectrum_at(const SystemParams& params, const QuantumState& steady, int n_b,
                                            std::span<const double> grid, Sidebands sidebands,
                                            DissipatorModel dissipators = DissipatorModel::lindblad);

struct CavityG2 {
  double first_order = 0.0;   ///< both adiabatic terms
  double zeroth_order = 0.0;  ///< a proportional to b
};

/// Zero-delay cavity g2 from the adiabatic relation, keeping the terms with
/// equal numbers of b and b^dag (the others oscillate at 2 omega_m in the lab
/// frame). Throws DomainError when <a^dag a> vanishes.
CavityG2 g2_cavity(const QuantumState& steady, const SystemParams& params);

/// <b^dag b^dag b b> / <b^dag b>^2. Throws DomainError for zero occupation.
double g2_mech(const QuantumState& steady);

/// <a^dag a> with the same balanced-term rule.
double cavity_occupation(const QuantumState& steady, const SystemParams& params);

}  // namespace tlsom
