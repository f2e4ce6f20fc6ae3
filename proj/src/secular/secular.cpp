#include "tlsom/secular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tlsom/error.hpp"
#include "tlsom/parallel.hpp"

namespace tlsom {

TransitionRates::TransitionRates(JCLadder ladder, double damping, double occupation, double tls_decay,
                                 double tls_occupation)
    : ladder_(std::move(ladder)),
      damping_(damping),
      occupation_(occupation),
      tls_decay_(tls_decay),
      tls_occupation_(tls_occupation) {}

double TransitionRates::down(int n, Branch a, Branch b) const {
  if (n < 1 || n > ladder_.n_max() || !JCLadder::exists(n, a, b)) return 0.0;
  const double bm = ladder_.b_element(n, a, b);
  const double sm = ladder_.sigma_element(n, a, b);
  return damping_ * (occupation_ + 1.0) * bm * bm + tls_decay_ * (tls_occupation_ + 1.0) * sm * sm;
}

double TransitionRates::up(int n, Branch a, Branch b) const {
  if (n < 1 || n > ladder_.n_max() || !JCLadder::exists(n, a, b)) return 0.0;
  const double bm = ladder_.b_element(n, a, b);
  const double sm = ladder_.sigma_element(n, a, b);
  return damping_ * occupation_ * bm * bm + tls_decay_ * tls_occupation_ * sm * sm;
}

TransitionRates transition_rates(const JCLadder& ladder, const EffectiveMechanics& eff, double tls_decay,
                                 double tls_occupation) {
  return TransitionRates(ladder, eff.damping, eff.occupation, tls_decay, tls_occupation);
}

LineWidths::LineWidths(const TransitionRates& r) : n_max_(r.n_max() - 1) {
  widths_.assign(static_cast<std::size_t>(4 * (n_max_ + 1)), 0.0);
  for (int n = 1; n <= n_max_; ++n) {
    for (Branch a : kBranches) {
      for (Branch b : kBranches) {
        double w = 0.0;
        for (Branch m : kBranches) w += r.down(n, a, m) + r.down(n - 1, b, m) + r.up(n + 1, m, a) + r.up(n, m, b);
        widths_[4 * n + 2 * idx(a) + idx(b)] = w;
      }
    }
  }
}

LineWidths line_widths(const TransitionRates& rates) { return LineWidths(rates); }

double Populations::total() const {
  double t = 0.0;
  for (std::size_t n = 0; n < plus.size(); ++n) t += plus[n] + minus[n];
  return t;
}

Populations steady_populations(const TransitionRates& rates, int n_max, double tail_tol) {
  if (n_max < 1) throw DomainError("steady_populations: n_max must be at least 1");
  const double up_m = rates.damping() * rates.occupation();
  const double down_m = rates.damping() * (rates.occupation() + 1.0);
  const double up_t = rates.tls_decay() * rates.tls_occupation();
  const double down_t = rates.tls_decay() * (rates.tls_occupation() + 1.0);
  auto ratio = [&](int n) {
    const double k = 2.0 * n + 1.0;
    const double den = down_m * k + down_t;
    if (!(den > 0.0)) throw DomainError("steady_populations: no decay channel");
    return (up_m * k + up_t) / den;
  };
  // Large-n limit of the ratio; the ratio moves monotonically towards it.
  const double limit = down_m > 0.0 ? up_m / down_m : ratio(0);
  if (!(limit < 1.0) || !(ratio(0) < 1.0) || !(rates.damping() >= 0.0))
    throw SolverError("steady_populations: heating-dominated ladder is not normalizable");

  int cutoff = n_max;
  constexpr int kMaxCutoff = 1 << 22;
  while (true) {
    std::vector<double> q(static_cast<std::size_t>(cutoff + 1));
    q[0] = 1.0;
    for (int n = 0; n < cutoff; ++n) q[n + 1] = q[n] * ratio(n);
    double z = q[0];
    for (int n = 1; n <= cutoff; ++n) z += 2.0 * q[n];
    const double r = std::max(ratio(cutoff), limit);
    const double tail = 2.0 * q[cutoff] * r / (1.0 - r) / z;
    if (tail <= tail_tol || cutoff >= kMaxCutoff) {
      if (tail > tail_tol) throw SolverError("steady_populations: tail did not converge");
      Populations p;
      p.plus.resize(q.size());
      p.minus.resize(q.size());
      for (int n = 0; n <= cutoff; ++n) {
        p.plus[n] = q[n] / z;
        p.minus[n] = n == 0 ? 0.0 : q[n] / z;
      }
      p.tail = tail;
      return p;
    }
    cutoff *= 2;
  }
}

Populations rate_equation_populations(const TransitionRates& r) {
  const int nmax = r.n_max();
  const int dim = 2 * nmax + 1;
  auto state = [](int n, Branch a) { return n == 0 ? 0 : 2 * n - 1 + idx(a); };
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n <= nmax; ++n) {
    for (Branch a : kBranches) {
      for (Branch b : kBranches) {
        if (!JCLadder::exists(n, a, b)) continue;
        const int hi = state(n, a);
        const int lo = state(n - 1, b);
        const double d = r.down(n, a, b);
        const double u = r.up(n, a, b);
        gen(lo, hi) += d;
        gen(hi, hi) -= d;
        gen(hi, lo) += u;
        gen(lo, lo) -= u;
      }
    }
  }
  gen.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs(0) = 1.0;
  const Eigen::VectorXd p = gen.partialPivLu().solve(rhs);
  Populations out;
  out.plus.assign(static_cast<std::size_t>(nmax + 1), 0.0);
  out.minus.assign(static_cast<std::size_t>(nmax + 1), 0.0);
  out.plus[0] = p(0);
  for (int n = 1; n <= nmax; ++n) {
    out.plus[n] = p(state(n, Branch::plus));
    out.minus[n] = p(state(n, Branch::minus));
  }
  return out;
}

int initial_rung_cutoff(const SystemParams& params) {
  return std::max(10, static_cast<int>(std::ceil(8.0 * params.mech_occupation())));
}

namespace {

/// Ladder, rates, widths and populations sharing one auto-extended cutoff.
struct SecularModel {
  EffectiveMechanics eff;
  Populations populations;
  JCLadder ladder;  // cutoff n_max + 1, so widths cover n <= n_max
  LineWidths widths;
  int n_max;
  Warnings warnings;
};

SecularModel build_model(const SystemParams& params, double tail_tol) {
  EffectiveMechanics eff = cooling_rates(params);
  const double nt = params.tls_occupation();
  const int start = initial_rung_cutoff(params);
  const TransitionRates probe = transition_rates(jc_eigensystem(params, start + 1), eff, params.tls_decay, nt);
  Populations pops = steady_populations(probe, start, tail_tol);
  const int nmax = pops.n_max();
  JCLadder ladder = jc_eigensystem(params, nmax + 1);
  const TransitionRates rates = transition_rates(ladder, eff, params.tls_decay, nt);
  Warnings warnings = eff.warnings;
  for (auto& w : ladder.warnings()) warnings.push_back(w);
  if (params.detuning != 0.0) {
    const TransitionRates truncated = transition_rates(jc_eigensystem(params, nmax), eff, params.tls_decay, nt);
    const double tail = pops.tail;
    pops = rate_equation_populations(truncated);
    pops.tail = tail;
    warnings.push_back({"secular.detuned", "detuned ladder: populations from the full rate equation"});
  }
  LineWidths widths(rates);
  return SecularModel{std::move(eff), std::move(pops), std::move(ladder), std::move(widths), nmax,
                      std::move(warnings)};
}

constexpr double kPi = std::numbers::pi;

double blue_weight(const SecularModel& m, int n, Branch a, Branch b) {
  const double bm = m.ladder.b_element(n, a, b);
  return 2.0 * m.eff.cooling_rate * bm * bm * m.populations.at(n, a) / (kPi * m.widths.width(n, a, b));
}

double red_weight(const SecularModel& m, int n, Branch a, Branch b) {
  const double bm = m.ladder.b_element(n, a, b);
  return 2.0 * m.eff.heating_rate * bm * bm * m.populations.at(n - 1, b) / (kPi * m.widths.width(n, a, b));
}

void flag_overlaps(const std::vector<SpectralLine>& lines, double floor, Warnings& warnings) {
  double heaviest = 0.0;
  for (const auto& l : lines) heaviest = std::max(heaviest, l.weight);
  std::vector<const SpectralLine*> sig;
  for (const auto& l : lines)
    if (l.weight > 0.0 && l.weight >= floor * heaviest) sig.push_back(&l);
  std::sort(sig.begin(), sig.end(), [](auto* x, auto* y) { return x->center < y->center; });
  double widest = 0.0;
  for (auto* l : sig) widest = std::max(widest, l->half_width);
  std::size_t count = 0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    for (std::size_t j = i + 1; j < sig.size(); ++j) {
      const double gap = sig[j]->center - sig[i]->center;
      if (gap >= sig[i]->half_width + widest) break;
      if (gap < sig[i]->half_width + sig[j]->half_width) ++count;
    }
  }
  if (count > 0)
    warnings.push_back({"secular.overlap", std::to_string(count) +
                                               " pairs of spectral lines overlap; secular approximation doubtful"});
}

}  // namespace

double Spectrum::evaluate(double x) const {
  double s = 0.0;
  for (const auto& l : lines) s += l.weight * lorentzian(x, l.center, l.half_width);
  return s;
}

Spectrum spectrum(const SystemParams& params, std::span<const double> grid, Sidebands sidebands,
                  const SecularSpectrumOptions& options) {
  if (params.drive != std::complex<double>(0.0, 0.0))
    throw DomainError("spectrum: the secular spectrum is defined without microwave drive");
  SecularModel m = build_model(params, options.tail_tol);
  Spectrum out;
  const bool blue = sidebands != Sidebands::red;
  const bool red = sidebands != Sidebands::blue;
  for (int n = 1; n <= m.n_max; ++n) {
    for (Branch a : kBranches) {
      for (Branch b : kBranches) {
        if (!JCLadder::exists(n, a, b)) continue;
        const double w = m.widths.width(n, a, b);
        const double f = m.ladder.transition_frequency(n, a, b);
        if (blue) out.lines.push_back({f, 0.5 * w, blue_weight(m, n, a, b), n, a, b, true});
        if (red) out.lines.push_back({-f, 0.5 * w, red_weight(m, n, a, b), n, a, b, false});
      }
    }
  }
  out.grid.assign(grid.begin(), grid.end());
  out.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) { out.values[i] = out.evaluate(out.grid[i]); });
  out.warnings = m.warnings;
  for (auto& w : regime_flags(params).warnings())
    if (w.code != "regime.weak_drive") out.warnings.push_back(w);
  flag_overlaps(out.lines, options.overlap_weight_floor, out.warnings);
  out.populations = std::move(m.populations);
  out.mechanics = std::move(m.eff);
  return out;
}

namespace {

int scan_dominant(const SecularModel& m) {
  int best = 1;
  double best_w = -1.0;
  for (int n = 1; n <= m.n_max; ++n) {
    const double w = blue_weight(m, n, Branch::plus, Branch::plus);
    if (w > best_w) {
      best_w = w;
      best = n;
    }
  }
  return best;
}

/// Center separation minus mean width of the two dominant lines at rung N.
double merge_criterion(const SecularModel& m, int big_n) {
  const Branch lower_target = big_n == 1 ? Branch::plus : Branch::minus;
  const double sep = m.ladder.transition_frequency(big_n, Branch::plus, Branch::plus) -
                     m.ladder.transition_frequency(big_n, Branch::minus, lower_target);
  const double width =
      0.5 * (m.widths.width(big_n, Branch::plus, Branch::plus) + m.widths.width(big_n, Branch::minus, lower_target));
  return sep - width;
}

}  // namespace

DominantIndex dominant_index(const SystemParams& params) {
  const SecularModel m = build_model(params, 1e-8);
  DominantIndex d;
  d.scanned = scan_dominant(m);
  d.analytic = m.eff.mech_bath / (1.0 + 2.0 * m.eff.cooling_rate / params.tls_decay);
  return d;
}

DominantIndex dominant_index(const SystemParams& params, double kelvin) {
  return dominant_index(params.with_temperature(kelvin));
}

CrossoverEstimate crossover_T_analytic(const SystemParams& p) {
  const EffectiveMechanics eff = cooling_rates(p);
  const double r = eff.cooling_rate / p.tls_decay;
  CrossoverEstimate c;
  c.bath_occupation =
      std::pow(p.tls_coupling / (2.0 * p.tls_decay), 2.0 / 3.0) * (1.0 + 2.0 * r) / std::pow(1.0 + 3.0 * r, 2.0 / 3.0);
  c.temperature = p.thermal_scale() * c.bath_occupation;
  const double rethermal = p.mech_damping * c.bath_occupation;
  auto flag = [&](bool ok, const char* code, const char* what) {
    if (!ok) c.warnings.push_back({code, what});
  };
  flag(eff.heating_rate <= kMuchLess * rethermal, "crossover.heating", "A+ << gamma_m nm_c violated");
  flag(rethermal <= kMuchLess * eff.cooling_rate, "crossover.cooling", "gamma_m nm_c << A- violated");
  flag(eff.cooling_rate <= p.tls_decay, "crossover.tls_dominated", "A- <~ gamma_T violated");
  flag(p.tls_decay <= kMuchLess * p.tls_coupling, "crossover.strong_coupling", "gamma_T << lambda violated");
  flag(c.bath_occupation >= 1.0 / kMuchLess, "crossover.hot", "nm_c >> 1 violated");
  return c;
}

CrossoverEstimate crossover_T_numeric(const SystemParams& params, double t_low, double t_high,
                                      const CrossoverOptions& options) {
  if (!(t_low > 0.0 && t_high > t_low)) throw DomainError("crossover_T_numeric: need 0 < T_low < T_high");
  auto evaluate = [&](double t, int& big_n) {
    const SecularModel m = build_model(params.with_temperature(t), 1e-8);
    big_n = scan_dominant(m);
    return merge_criterion(m, big_n);
  };
  CrossoverEstimate c;
  int n_low = 1, n_high = 1;
  if (evaluate(t_low, n_low) <= 0.0) {
    c.temperature = t_low;
    c.dominant_index = n_low;
    c.already_merged = true;
    c.warnings.push_back({"crossover.merged", "merge criterion already met at the lower bracket"});
  } else {
    if (evaluate(t_high, n_high) > 0.0) throw SolverError("crossover_T_numeric: no sign change in bracket");
    double lo = t_low, hi = t_high;
    while ((hi - lo) > options.rel_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      int n_mid = 1;
      if (evaluate(mid, n_mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
        n_high = n_mid;
      }
    }
    c.temperature = 0.5 * (lo + hi);
    c.dominant_index = n_high;
  }
  c.bath_occupation = params.with_temperature(c.temperature).mech_occupation();
  return c;
}

CrossoverEstimate crossover_T_dip(const SystemParams& params, double t_low, double t_high,
                                  const CrossoverOptions& options) {
  if (!(t_low > 0.0 && t_high > t_low)) throw DomainError("crossover_T_dip: need 0 < T_low < T_high");
  constexpr int kHalf = 600;
  const double center = 1.0;  // blue sideband sits at omega_m from the laser
  std::vector<double> grid;
  for (int i = -kHalf; i <= kHalf; ++i) grid.push_back(center + 3.0 * params.tls_coupling * i / kHalf);
  auto dip = [&](double t) {
    const Spectrum s = spectrum(params.with_temperature(t), grid, Sidebands::blue, {});
    const double mid = s.values[kHalf];
    const double peak = *std::max_element(s.values.begin(), s.values.end());
    return mid < peak * (1.0 - 1e-9);
  };
  CrossoverEstimate c;
  if (!dip(t_low)) {
    c.temperature = t_low;
    c.already_merged = true;
    c.warnings.push_back({"crossover.merged", "no central dip at the lower bracket"});
  } else {
    if (dip(t_high)) throw SolverError("crossover_T_dip: central dip persists at the upper bracket");
    double lo = t_low, hi = t_high;
    while ((hi - lo) > options.rel_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      (dip(mid) ? lo : hi) = mid;
    }
    c.temperature = 0.5 * (lo + hi);
  }
  c.bath_occupation = params.with_temperature(c.temperature).mech_occupation();
  return c;
}

}  // namespace tlsom
