// Ladder, thermal and cooling-rate checks against independent closed forms
// and dense diagonalization.
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "tlsom/error.hpp"
#include "tlsom/jc_ladder.hpp"
#include "tlsom/mechanics.hpp"
#include "tlsom/params.hpp"
#include "tlsom/thermal.hpp"
#include "tlsom/units.hpp"

using namespace tlsom;

namespace {

SystemParams fig2a(double kelvin = 0.05) {
  SystemParams p;
  p.omega_m_si = units::angular(5e9);
  p.cavity_decay = 0.1;
  p.tls_coupling = 2e-3;
  p.mech_damping = 6e-6;
  p.om_coupling = 2e-3;
  p.tls_decay = 2e-4;
  p.laser_detuning = -1.0;
  p.temperature = kelvin;
  return p;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(b), 1e-300); }

/// Rung-n block in (|n,g>, |n-1,e>), energies from the ground state |0,g>.
Eigen::Matrix2d rung_block(int n, double detuning, double lambda) {
  const double dt = 1.0 - detuning;
  Eigen::Matrix2d h;
  h << n, lambda * std::sqrt(double(n)), lambda * std::sqrt(double(n)), (n - 1) + dt;
  return h;
}

}  // namespace

TEST_CASE("resonant ladder matches closed forms") {
  const double lambda = 2e-3;
  const JCLadder l(0.0, lambda, 20);
  CHECK(l.energy(0, Branch::plus) == 0.0);
  for (int n = 1; n <= 20; ++n) {
    for (Branch a : kBranches) {
      CHECK(rel_close(l.energy(n, a), n + sign(a) * lambda * std::sqrt(double(n)), 1e-12));
      if (n == 1) continue;
      for (Branch b : kBranches) {
        const double want = (2.0 * n - 1.0 + 2.0 * sign(a) * sign(b) * std::sqrt(n * (n - 1.0))) / 4.0;
        CHECK(rel_close(std::pow(l.b_element(n, a, b), 2), want, 1e-12));
      }
    }
  }
  CHECK(std::pow(l.b_element(1, Branch::plus, Branch::plus), 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::pow(l.b_element(1, Branch::minus, Branch::plus), 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(l.b_element(1, Branch::plus, Branch::minus) == 0.0);
}

TEST_CASE("detuned ladder matches dense diagonalization") {
  std::mt19937_64 rng(7);
  const double lambda = 2e-3;
  std::uniform_real_distribution<double> u(-lambda, lambda);
  for (int trial = 0; trial < 50; ++trial) {
    const double dw = u(rng);
    const JCLadder l(dw, lambda, 12);
    std::vector<Eigen::Matrix2d> vecs(13);
    for (int n = 1; n <= 12; ++n) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rung_block(n, dw, lambda));
      // Eigen sorts ascending: column 1 is the upper branch.
      CHECK(rel_close(l.energy(n, Branch::plus), es.eigenvalues()(1), 1e-12));
      CHECK(rel_close(l.energy(n, Branch::minus), es.eigenvalues()(0), 1e-12));
      vecs[n] = es.eigenvectors();
    }
    // Squared matrix elements are sign-convention free.
    auto coef = [&](int n, Branch a, int comp) {
      if (n == 0) return comp == 0 ? 1.0 : 0.0;
      return vecs[n](comp, a == Branch::plus ? 1 : 0);
    };
    for (int n = 2; n <= 12; ++n) {
      for (Branch a : kBranches) {
        for (Branch b : kBranches) {
          const double bm = coef(n - 1, b, 0) * coef(n, a, 0) * std::sqrt(double(n)) +
                            coef(n - 1, b, 1) * coef(n, a, 1) * std::sqrt(n - 1.0);
          const double sm = coef(n - 1, b, 0) * coef(n, a, 1);
          CHECK(std::pow(l.b_element(n, a, b), 2) == doctest::Approx(bm * bm).epsilon(1e-10));
          CHECK(std::pow(l.sigma_element(n, a, b), 2) == doctest::Approx(sm * sm).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("ladder completeness sums") {
  for (double dw : {0.0, 1.3e-3, -0.7e-3}) {
    const JCLadder l(dw, 2e-3, 30);
    for (int n = 2; n <= 30; ++n) {
      for (Branch a : kBranches) {
        double sb = 0.0, ss = 0.0;
        for (Branch b : kBranches) {
          sb += std::pow(l.b_element(n, a, b), 2);
          ss += std::pow(l.sigma_element(n, a, b), 2);
        }
        const double c2 = std::pow(l.c(n, a), 2), s2 = std::pow(l.s(n, a), 2);
        CHECK(sb == doctest::Approx(n * c2 + (n - 1) * s2).epsilon(1e-12));
        CHECK(ss == doctest::Approx(s2).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ladder errors and flags") {
  CHECK_THROWS_AS(JCLadder(0.0, 1e-3, 0), DomainError);
  CHECK(JCLadder(0.0, 1e-3, 1).warnings().empty());
  CHECK_FALSE(JCLadder(0.0, 0.2, 1).warnings().empty());
}

TEST_CASE("bose occupation") {
  // x = hbar omega / k_B T = 1 at 0.23996 K for 5 GHz.
  const double w = units::angular(5e9);
  CHECK(bose_occupation(w, 0.2399) == doctest::Approx(0.582).epsilon(2e-3));
  CHECK(bose_occupation(w, 0.0) == 0.0);
  double last = -1.0;
  for (double t = 0.01; t < 5.0; t *= 1.3) {
    const double n = bose_occupation(w, t);
    CHECK(n > last);
    last = n;
    const double x = units::hbar * w / (units::boltzmann * t);
    CHECK(n + 1.0 == doctest::Approx(std::exp(x) * n).epsilon(1e-12));
  }
}

TEST_CASE("cooling rates reduce to the resolved-sideband limits") {
  SystemParams p = fig2a(0.05);
  const EffectiveMechanics m = cooling_rates(p);
  const double bound = std::pow(p.cavity_decay, 2) / 4.0;
  CHECK(std::abs(m.cooling_rate / m.cooling_rate_resolved - 1.0) < bound);
  CHECK(std::abs(m.heating_rate / m.heating_rate_resolved - 1.0) < bound);
  // Independent evaluation of the Lorentzian rates.
  const double g2 = p.om_coupling * p.om_coupling, k = p.cavity_decay;
  CHECK(m.cooling_rate == doctest::Approx(g2 * k / (k * k / 4)).epsilon(1e-14));
  CHECK(m.heating_rate == doctest::Approx(g2 * k / (k * k / 4 + 4.0)).epsilon(1e-14));
  CHECK(m.heating_rate == doctest::Approx(9.99e-8).epsilon(1e-3));
  CHECK(m.damping == doctest::Approx(p.mech_damping + m.cooling_rate - m.heating_rate));
  CHECK(m.occupation ==
        doctest::Approx((p.mech_occupation() * p.mech_damping + m.heating_rate) / m.damping).epsilon(1e-14));
  CHECK(m.warnings.empty());

  SystemParams hot = p;
  hot.laser_detuning = 1.0;  // blue-detuned drive heats
  hot.om_coupling = 0.01;
  CHECK_FALSE(cooling_rates(hot).warnings.empty());
}

TEST_CASE("params validation and regime flags") {
  SystemParams p = fig2a();
  CHECK_NOTHROW(p.validate());
  CHECK(regime_flags(p).warnings().empty());
  SystemParams bad = p;
  bad.tls_decay = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.temperature = -0.1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  SystemParams zero = p.with_temperature(0.0);
  CHECK_NOTHROW(zero.validate());
  CHECK(zero.mech_occupation() == 0.0);

  SystemParams wide = p;
  wide.detuning = 3.0 * p.tls_coupling;
  CHECK_FALSE(regime_flags(wide).narrow);
  SystemParams strong = p;
  strong.drive = 0.5 * p.tls_coupling;
  CHECK_FALSE(regime_flags(strong).weak_drive);
  // nm and nT are evaluated at their own frequencies.
  SystemParams det = p.with_temperature(0.5);
  det.detuning = 1e-3;
  CHECK(det.tls_occupation() > det.mech_occupation());
}
