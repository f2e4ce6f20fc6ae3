// Secular rates, widths, populations, spectra and crossover estimates.
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tlsom/error.hpp"
#include "tlsom/secular.hpp"
#include "tlsom/units.hpp"

using namespace tlsom;

namespace {

SystemParams fig2(bool b_panel, double kelvin) {
  SystemParams p;
  p.omega_m_si = units::angular(5e9);
  p.cavity_decay = 0.1;
  p.tls_coupling = 2e-3;
  p.mech_damping = 6e-6;
  p.om_coupling = b_panel ? 2e-4 : 2e-3;
  p.tls_decay = b_panel ? 2e-3 / 30 : 2e-4;
  p.laser_detuning = -1.0;
  p.temperature = kelvin;
  return p;
}

TransitionRates rates_for(const SystemParams& p, int n_max) {
  const auto eff = cooling_rates(p);
  return transition_rates(jc_eigensystem(p, n_max), eff, p.tls_decay, p.tls_occupation());
}

// Main-text width closed forms (resonant ladder).
double width_closed(int n, double gb, double nb, double gt, double nt) {
  if (n == 1) return gb * (3 * nb + 0.5) + gt * (2 * nt + 0.5);
  return 2 * (n - 1) * gb * (nb + 1) + 2 * n * gb * nb + gt * (2 * nt + 1);
}

std::vector<double> mirrored(double c, double half, int n) {
  std::vector<double> g;
  for (int i = -n; i <= n; ++i) g.push_back(c + half * i / n);
  return g;
}

}  // namespace

TEST_CASE("rates at zero temperature have no up-jumps") {
  const JCLadder l(0.0, 2e-3, 10);
  EffectiveMechanics eff;
  eff.damping = 1e-5;
  eff.occupation = 0.0;
  const TransitionRates r(l, eff.damping, eff.occupation, 2e-4, 0.0);
  for (int n = 0; n <= 11; ++n)
    for (Branch a : kBranches)
      for (Branch b : kBranches) CHECK(r.up(n, a, b) == 0.0);
  CHECK(r.down(1, Branch::plus, Branch::minus) == 0.0);
  CHECK(r.down(0, Branch::plus, Branch::plus) == 0.0);
  CHECK(r.down(1, Branch::plus, Branch::plus) == doctest::Approx(0.5 * (1e-5 + 2e-4)));
}

TEST_CASE("rates match their definition and symmetries") {
  for (double dw : {0.0, 1e-3}) {
    SystemParams p = fig2(false, 0.5);
    p.detuning = dw;
    const auto eff = cooling_rates(p);
    const double nt = p.tls_occupation();
    const auto r = rates_for(p, 25);
    const auto& l = r.ladder();
    for (int n = 1; n <= 25; ++n) {
      double sum_plus_d = 0, sum_minus_d = 0, sum_plus_u = 0, sum_minus_u = 0;
      for (Branch a : kBranches) {
        for (Branch b : kBranches) {
          if (!JCLadder::exists(n, a, b)) continue;
          const double b2 = std::pow(l.b_element(n, a, b), 2), s2 = std::pow(l.sigma_element(n, a, b), 2);
          CHECK(r.down(n, a, b) ==
                doctest::Approx(eff.damping * (eff.occupation + 1) * b2 + p.tls_decay * (nt + 1) * s2).epsilon(1e-14));
          CHECK(r.up(n, a, b) == doctest::Approx(eff.damping * eff.occupation * b2 + p.tls_decay * nt * s2).epsilon(1e-14));
          CHECK(r.down(n, a, b) >= 0.0);
          if (n >= 2 && dw == 0.0) {
            CHECK(r.down(n, a, b) == doctest::Approx(r.down(n, b, a)).epsilon(1e-12));
            CHECK(r.up(n, a, b) == doctest::Approx(r.up(n, b, a)).epsilon(1e-12));
          }
        }
      }
      for (Branch b : kBranches) {
        sum_plus_d += r.down(n, Branch::plus, b);
        sum_minus_d += r.down(n, Branch::minus, b);
        sum_plus_u += r.up(n, Branch::plus, b);
        sum_minus_u += r.up(n, Branch::minus, b);
      }
      if (dw == 0.0) {
        CHECK(sum_plus_d == doctest::Approx(sum_minus_d).epsilon(1e-12));
        CHECK(sum_plus_u == doctest::Approx(sum_minus_u).epsilon(1e-12));
      }
    }
    if (dw == 0.0) {
      CHECK(r.down(1, Branch::plus, Branch::plus) == doctest::Approx(r.down(1, Branch::minus, Branch::plus)));
      CHECK(r.up(1, Branch::plus, Branch::plus) == doctest::Approx(r.up(1, Branch::minus, Branch::plus)));
    }
  }
}

TEST_CASE("widths equal the closed forms on resonance") {
  for (double t : {0.0, 0.05, 0.5, 2.0}) {
    const SystemParams p = fig2(false, t);
    const auto eff = cooling_rates(p);
    const auto w = line_widths(rates_for(p, 40));
    double last = 0.0;
    for (int n = 1; n < 40; ++n) {
      const double want = width_closed(n, eff.damping, eff.occupation, p.tls_decay, p.tls_occupation());
      for (Branch a : kBranches)
        for (Branch b : kBranches)
          if (JCLadder::exists(n, a, b)) CHECK(w.width(n, a, b) == doctest::Approx(want).epsilon(1e-12));
      if (n >= 2) CHECK(w.width(n, Branch::plus, Branch::plus) > last);
      last = w.width(n, Branch::plus, Branch::plus);
    }
  }
  // Zero occupation.
  const JCLadder l(0.0, 2e-3, 5);
  const auto w0 = line_widths(TransitionRates(l, 1e-5, 0.0, 2e-4, 0.0));
  CHECK(w0.width(1, Branch::plus, Branch::plus) == doctest::Approx(0.5e-5 + 1e-4).epsilon(1e-14));
  CHECK(w0.width(1, Branch::minus, Branch::plus) == doctest::Approx(0.5e-5 + 1e-4).epsilon(1e-14));
}

TEST_CASE("detailed-balance populations") {
  // Ground state.
  const JCLadder l(0.0, 2e-3, 10);
  const auto p0 = steady_populations(TransitionRates(l, 1e-5, 0.0, 2e-4, 0.0), 10);
  CHECK(p0.plus[0] == 1.0);
  for (int n = 1; n <= p0.n_max(); ++n) CHECK(p0.plus[n] == 0.0);

  for (double t : {0.05, 0.5, 1.5}) {
    const SystemParams p = fig2(false, t);
    const auto r = rates_for(p, 200);
    const auto pop = steady_populations(r, initial_rung_cutoff(p));
    CHECK(pop.total() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(pop.plus[0] + 2 * [&] {
      double s = 0;
      for (int n = 1; n <= pop.n_max(); ++n) s += pop.plus[n];
      return s;
    }() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(pop.plus[1] == doctest::Approx(r.up(1, Branch::plus, Branch::plus) / r.down(1, Branch::plus, Branch::plus) *
                                         pop.plus[0]).epsilon(1e-12));
    const double gb = r.damping(), nb = r.occupation(), gt = r.tls_decay(), nt = r.tls_occupation();
    for (int n = 1; n < pop.n_max(); ++n) {
      CHECK(pop.minus[n] == pop.plus[n]);
      CHECK(pop.plus[n + 1] <= pop.plus[n]);
      const double ratio = (gb * nb * (2 * n + 1) + gt * nt) / (gb * (nb + 1) * (2 * n + 1) + gt * (nt + 1));
      CHECK(pop.plus[n + 1] == doctest::Approx(ratio * pop.plus[n]).epsilon(1e-10));
    }
    // Full rate equation agrees on resonance.
    const auto rr = rates_for(p, pop.n_max() + 40);
    const auto re = rate_equation_populations(rr);
    for (int n = 0; n <= pop.n_max(); ++n) {
      CHECK(std::abs(re.plus[n] - pop.plus[n]) < 1e-10);
      if (n > 0) CHECK(std::abs(re.minus[n] - pop.minus[n]) < 1e-10);
    }
  }
}

TEST_CASE("heating-dominated ladder is rejected") {
  SystemParams p = fig2(false, 0.5);
  p.laser_detuning = 1.0;
  p.om_coupling = 0.01;
  CHECK_THROWS_AS(spectrum(p, std::vector<double>{1.0}, Sidebands::blue), SolverError);
}

TEST_CASE("low-temperature spectrum has two lines at omega_blue +- lambda") {
  const SystemParams p = fig2(false, 1e-3);
  std::vector<double> grid;
  for (int i = -3000; i <= 3000; ++i) grid.push_back(1.0 + 3 * p.tls_coupling * i / 3000.0);
  const auto s = spectrum(p, grid, Sidebands::blue);
  std::vector<double> peaks;
  const double top = *std::max_element(s.values.begin(), s.values.end());
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1] && s.values[i] > 1e-3 * top)
      peaks.push_back(grid[i]);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0] == doctest::Approx(1.0 - p.tls_coupling).epsilon(1e-6));
  CHECK(peaks[1] == doctest::Approx(1.0 + p.tls_coupling).epsilon(1e-6));
  for (double v : s.values) CHECK(v >= 0.0);
}

TEST_CASE("resonant spectrum is mirror symmetric") {
  for (double t : {0.05, 0.5, 1.2}) {
    const SystemParams p = fig2(false, t);
    const auto g = mirrored(1.0, 0.02, 2000);
    const auto s = spectrum(p, g, Sidebands::blue);
    const double top = *std::max_element(s.values.begin(), s.values.end());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(s.values[i] - s.values[g.size() - 1 - i]) <= 1e-12 * top);
  }
}

TEST_CASE("weights follow the line definitions") {
  const SystemParams p = fig2(false, 0.5);
  const auto s = spectrum(p, std::vector<double>{}, Sidebands::both);
  const auto& m = s.mechanics;
  const auto l = jc_eigensystem(p, s.populations.n_max() + 1);
  double blue_sum = 0.0, blue_want = 0.0;
  bool saw_red = false;
  for (const auto& line : s.lines) {
    CHECK(line.weight >= 0.0);
    CHECK(line.half_width > 0.0);
    const double b2 = std::pow(l.b_element(line.n, line.from, line.to), 2);
    if (line.blue) {
      CHECK(line.center == doctest::Approx(l.transition_frequency(line.n, line.from, line.to)));
      blue_sum += line.weight * std::numbers::pi * line.half_width;
      blue_want += m.cooling_rate * b2 * s.populations.at(line.n, line.from);
    } else {
      saw_red = true;
      CHECK(line.center == doctest::Approx(-l.transition_frequency(line.n, line.from, line.to)));
      CHECK(line.weight * std::numbers::pi * line.half_width ==
            doctest::Approx(m.heating_rate * b2 * s.populations.at(line.n - 1, line.to)).epsilon(1e-12));
    }
  }
  CHECK(saw_red);
  CHECK(blue_sum == doctest::Approx(blue_want).epsilon(1e-12));
}

TEST_CASE("drive is rejected by the secular spectrum") {
  SystemParams p = fig2(false, 0.05);
  p.drive = {1e-4, 0.0};
  CHECK_THROWS_AS(spectrum(p, std::vector<double>{1.0}, Sidebands::blue), DomainError);
}

TEST_CASE("dominant index") {
  CHECK(dominant_index(fig2(false, 1e-3)).scanned == 1);
  const SystemParams p = fig2(false, 0.0);
  const auto tc = crossover_T_analytic(p);
  const auto d = dominant_index(p, tc.temperature);
  CHECK(std::abs(d.scanned - d.analytic) <= 2.0);
  // Linear in nm once gamma_T dominates.
  const double a = dominant_index(p, 5.0).analytic, b = dominant_index(p, 10.0).analytic;
  const double nm5 = p.with_temperature(5.0).mech_occupation(), nm10 = p.with_temperature(10.0).mech_occupation();
  CHECK(b / a == doctest::Approx(nm10 / nm5).epsilon(1e-12));
}

TEST_CASE("analytic crossover") {
  const auto a = crossover_T_analytic(fig2(false, 0.0));
  CHECK(a.bath_occupation == doctest::Approx(3.4).epsilon(0.02));
  CHECK(a.temperature == doctest::Approx(0.81).epsilon(0.01));
  const auto b = crossover_T_analytic(fig2(true, 0.0));
  CHECK(b.temperature == doctest::Approx(1.46).epsilon(0.01));

  // Closed form and (lambda / gamma_T)^(2/3) scaling at fixed A- / gamma_T.
  SystemParams p = fig2(false, 0.0);
  const double am = cooling_rates(p).cooling_rate, r = am / p.tls_decay;
  const double want = std::pow(p.tls_coupling / (2 * p.tls_decay), 2.0 / 3.0) * (1 + 2 * r) / std::pow(1 + 3 * r, 2.0 / 3.0);
  CHECK(a.bath_occupation == doctest::Approx(want).epsilon(1e-6));
  SystemParams q = p;
  q.tls_coupling *= 8.0;
  CHECK(crossover_T_analytic(q).bath_occupation == doctest::Approx(4.0 * a.bath_occupation).epsilon(1e-4));
}

TEST_CASE("numeric crossover") {
  for (bool panel : {false, true}) {
    const SystemParams p = fig2(panel, 0.0);
    const auto a = crossover_T_analytic(p);
    const auto n = crossover_T_numeric(p, 0.02, 5.0);
    CHECK_FALSE(n.already_merged);
    CHECK(std::abs(n.temperature / a.temperature - 1.0) < 0.35);
    CHECK(n.dominant_index >= 1);
  }
  SystemParams weak = fig2(false, 0.0);
  weak.tls_decay = 5.0 * weak.tls_coupling;
  const auto m = crossover_T_numeric(weak, 0.02, 5.0);
  CHECK(m.already_merged);
  CHECK(m.temperature == 0.02);
  CHECK_FALSE(m.warnings.empty());
  CHECK_THROWS_AS(crossover_T_numeric(fig2(false, 0.0), 0.02, 0.03), SolverError);
  CHECK_THROWS_AS(crossover_T_numeric(fig2(false, 0.0), 1.0, 0.5), DomainError);
}

TEST_CASE("dip diagnostic brackets the merge") {
  const SystemParams p = fig2(false, 0.0);
  const auto d = crossover_T_dip(p, 0.02, 5.0);
  CHECK_FALSE(d.already_merged);
  CHECK(d.temperature > 0.5);
  CHECK(d.temperature < 2.0);
}
