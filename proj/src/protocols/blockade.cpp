#include "tlsom/protocols/blockade.hpp"

#include <cmath>
#include <string>

#include "tlsom/engine/correlation.hpp"
#include "tlsom/engine/steady_state.hpp"
#include "tlsom/error.hpp"
#include "tlsom/parallel.hpp"

namespace tlsom {

BlockadePoint blockade_point(const SystemParams& base, double wmu, double kelvin, const BlockadeOptions& o) {
  SystemParams p = base.with_temperature(kelvin);
  p.drive_frequency = wmu;
  LiouvillianOptions lo;
  lo.frame = Frame::rotating_at(wmu);
  auto solve = [&](int n_b) {
    const QuantumState ss = steady_state(build_liouvillian(p, n_b, lo)).state;
    const CavityG2 c = g2_cavity(ss, p);
    return BlockadePoint{wmu, kelvin, c.first_order, c.zeroth_order, g2_mech(ss), n_b, 0.0};
  };
  int n_b = o.n_b > 0 ? o.n_b : default_cutoff(p);
  BlockadePoint pt = solve(n_b);
  if (!o.converge) return pt;
  while (true) {
    if (2 * n_b > o.max_n_b) throw SolverError("blockade: cutoff did not converge");
    BlockadePoint next = solve(2 * n_b);
    next.cutoff_change = max_change({pt.g2c, pt.g2c0, pt.g2m}, {next.g2c, next.g2c0, next.g2m});
    pt = next;
    n_b *= 2;
    if (pt.cutoff_change < o.tolerance) return pt;
  }
}

BlockadeScan blockade_scan(const SystemParams& params, std::span<const double> wmu_grid,
                           std::span<const double> temperatures, const BlockadeOptions& o) {
  BlockadeScan scan;
  const double drive = std::abs(params.drive);
  if (!(drive <= kMuchLess * params.tls_coupling))
    scan.warnings.push_back({"blockade.strong_drive", "|Omega_mu| << lambda violated"});
  if (!(params.tls_coupling > kMuchLess * params.tls_decay))
    scan.warnings.push_back(
        {"blockade.degenerate", "TLS nearly decoupled from the resonator; no blockade expected"});
  scan.points.resize(wmu_grid.size() * temperatures.size());
  parallel_for(scan.points.size(), [&](std::size_t k) {
    const double t = temperatures[k / wmu_grid.size()];
    const double w = wmu_grid[k % wmu_grid.size()];
    try {
      scan.points[k] = blockade_point(params, w, t, o);
    } catch (const Error& e) {
      throw SolverError("blockade at wmu=" + std::to_string(w) + ", T=" + std::to_string(t) + ": " + e.what());
    }
  });
  return scan;
}

}  // namespace tlsom
