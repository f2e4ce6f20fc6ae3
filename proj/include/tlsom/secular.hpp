#pragma once

#include <span>
#include <vector>

#include "tlsom/jc_ladder.hpp"
#include "tlsom/mechanics.hpp"
#include "tlsom/params.hpp"

namespace tlsom {

enum class Sidebands { blue, red, both };

/// Secular jump rates Gamma^(-)_{nab} (down) and Gamma^(+)_{nab} (up) between
/// adjacent rungs of the ladder. Rates for n = 0, n > n_max, or the missing
/// n = 1 "minus" targets are zero.
class TransitionRates {
 public:
  TransitionRates(JCLadder ladder, double damping, double occupation, double tls_decay, double tls_occupation);

  const JCLadder& ladder() const { return ladder_; }
  int n_max() const { return ladder_.n_max(); }
  double damping() const { return damping_; }
  double occupation() const { return occupation_; }
  double tls_decay() const { return tls_decay_; }
  double tls_occupation() const { return tls_occupation_; }

  double down(int n, Branch a, Branch b) const;
  double up(int n, Branch a, Branch b) const;

 private:
  JCLadder ladder_;
  double damping_, occupation_, tls_decay_, tls_occupation_;
};

/// Rates from the effective mechanics (damping, occupation) and the TLS bath.
TransitionRates transition_rates(const JCLadder& ladder, const EffectiveMechanics& eff, double tls_decay,
                                 double tls_occupation);

/// Full widths gamma_{nab} of every transition, for n <= rates.n_max() - 1
/// (the width of rung n needs the up-rates out of rung n).
class LineWidths {
 public:
  explicit LineWidths(const TransitionRates& rates);
  int n_max() const { return n_max_; }
  double width(int n, Branch a, Branch b) const { return widths_[4 * n + 2 * idx(a) + idx(b)]; }

 private:
  int n_max_;
  std::vector<double> widths_;
};

LineWidths line_widths(const TransitionRates& rates);

/// Steady occupations p_{n a} of the ladder states.
struct Populations {
  std::vector<double> plus;   ///< p_{n+}, n = 0..n_max
  std::vector<double> minus;  ///< p_{n-}, n = 0..n_max (p_{0-} = 0)
  double tail = 0.0;          ///< estimated mass above n_max
  int n_max() const { return static_cast<int>(plus.size()) - 1; }
  double at(int n, Branch a) const {
    if (n < 0 || n > n_max()) return 0.0;
    return a == Branch::plus ? plus[n] : minus[n];
  }
  double total() const;
};

/// Detailed-balance solution p_{(n+1)+}/p_{n+} of the resonant secular rate
/// equation. The cutoff starts at `n_max` and is doubled until the tail
/// estimate is below `tail_tol`. Throws SolverError when a ratio reaches one
/// (heating-dominated, non-normalizable).
Populations steady_populations(const TransitionRates& rates, int n_max, double tail_tol = 1e-8);

/// Exact stationary solution of the secular classical rate equation on the
/// ladder of `rates`, for any detuning (no up-jumps out of the top rung).
Populations rate_equation_populations(const TransitionRates& rates);

/// One Lorentzian of the secular output spectrum; centers are offsets from the laser.
struct SpectralLine {
  double center = 0.0;      ///< omega - omega_L
  double half_width = 0.0;  ///< gamma_{nab} / 2
  double weight = 0.0;      ///< W (peak value of the unit-peak Lorentzian)
  int n = 0;
  Branch from = Branch::plus;
  Branch to = Branch::plus;
  bool blue = true;
};

/// Unit-peak Lorentzian l(x) = hw^2 / (hw^2 + (x - center)^2).
inline double lorentzian(double x, double center, double half_width) {
  const double d = x - center;
  return half_width * half_width / (half_width * half_width + d * d);
}

struct SecularSpectrumOptions {
  double tail_tol = 1e-8;
  double overlap_weight_floor = 1e-3;  ///< lines lighter than this fraction of the heaviest skip the overlap test
};

struct Spectrum {
  std::vector<SpectralLine> lines;
  std::vector<double> grid;    ///< omega - omega_L
  std::vector<double> values;  ///< S on the grid
  Populations populations;
  EffectiveMechanics mechanics;
  Warnings warnings;

  double evaluate(double offset) const;
};

/// Secular sum-of-Lorentzians spectrum on `grid` (offsets from the laser).
Spectrum spectrum(const SystemParams& params, std::span<const double> grid, Sidebands sidebands,
                  const SecularSpectrumOptions& options = {});

/// Central-peak index of the two dominant blue lines.
struct DominantIndex {
  int scanned = 1;         ///< argmax_n W^blue_{n++}
  double analytic = 1.0;   ///< nm / (1 + 2 A^(-) / gamma_T)
};

DominantIndex dominant_index(const SystemParams& params);
DominantIndex dominant_index(const SystemParams& params, double kelvin);

struct CrossoverEstimate {
  double bath_occupation = 0.0;  ///< nm at the crossover
  double temperature = 0.0;      ///< [K]
  int dominant_index = 0;        ///< numeric: N at the returned temperature
  bool already_merged = false;   ///< numeric: criterion met at the lower bracket
  Warnings warnings;
};

/// Closed-form crossover temperature; regime conditions are reported as warnings.
CrossoverEstimate crossover_T_analytic(const SystemParams& params);

struct CrossoverOptions {
  double rel_tol = 1e-3;
};

/// Bisection on 2 lambda (sqrt N - sqrt(N-1)) - gamma_{N++} with N from
/// dominant_index. Throws SolverError if the bracket holds no sign change.
CrossoverEstimate crossover_T_numeric(const SystemParams& params, double t_low, double t_high,
                                      const CrossoverOptions& options = {});

/// Diagnostic variant: bisection on the presence of a local minimum of the
/// blue sideband at omega_blue.
CrossoverEstimate crossover_T_dip(const SystemParams& params, double t_low, double t_high,
                                  const CrossoverOptions& options = {});

/// Starting cutoff max(10, 8 nm) of the population auto-extension.
int initial_rung_cutoff(const SystemParams& params);

}  // namespace tlsom
