#pragma once

#include <span>
#include <vector>

#include "tlsom/params.hpp"

namespace tlsom {

struct BlockadeOptions {
  int n_b = 0;               ///< 0 selects default_cutoff at each temperature
  bool converge = true;      ///< double n_b until g2 values move by < tolerance
  double tolerance = 1e-6;
  int max_n_b = 200;
};

struct BlockadePoint {
  double wmu = 0.0;          ///< drive frequency, units of omega_m
  double temperature = 0.0;  ///< [K]
  double g2c = 0.0;          ///< cavity g2, both adiabatic terms
  double g2c0 = 0.0;         ///< cavity g2, zeroth order in kappa / omega_m
  double g2m = 0.0;          ///< resonator g2
  int n_b = 0;
  double cutoff_change = 0.0;
};

struct BlockadeScan {
  std::vector<BlockadePoint> points;  ///< temperature-major, then drive frequency
  Warnings warnings;
};

/// Driven steady state in the frame of the drive and the three g2 values.
BlockadePoint blockade_point(const SystemParams& params, double wmu, double kelvin,
                             const BlockadeOptions& options = {});

/// Every (T, omega_mu) pair in parallel. Solver errors are rethrown with the
/// grid coordinates in the message.
BlockadeScan blockade_scan(const SystemParams& params, std::span<const double> wmu_grid,
                           std::span<const double> temperatures, const BlockadeOptions& options = {});

}  // namespace tlsom
