// Blockade scans and backward-constructed state-preparation sequences.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tlsom/engine/operators.hpp"
#include "tlsom/error.hpp"
#include "tlsom/protocols/blockade.hpp"
#include "tlsom/protocols/state_prep.hpp"
#include "tlsom/units.hpp"

using namespace tlsom;

namespace {

SystemParams fig2a() {
  SystemParams p;
  p.omega_m_si = units::angular(5e9);
  p.cavity_decay = 0.1;
  p.tls_coupling = 2e-3;
  p.mech_damping = 6e-6;
  p.om_coupling = 2e-3;
  p.tls_decay = 2e-4;
  p.laser_detuning = -1.0;
  return p;
}

SystemParams fig3() {
  SystemParams p = fig2a();
  p.drive = {0.1 * p.tls_coupling, 0.0};
  return p;
}

DenseVector joint(const DenseVector& fock, int n_b) {
  DenseVector v = DenseVector::Zero(2 * n_b);
  for (Eigen::Index n = 0; n < fock.size(); ++n) v(HilbertSpace::index(int(n), 0)) = fock(n);
  return v;
}

PulseSequence sequence_for(const DenseVector& t, double lambda) {
  return law_eberly_sequence({t.data(), static_cast<std::size_t>(t.size())}, lambda);
}

}  // namespace

TEST_CASE("rotation propagator") {
  const Eigen::Matrix2cd u = tls_rotation(1.1, 0.4);
  CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  CHECK((tls_rotation(0.0, 2.0) - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  // A pi rotation swaps g and e.
  CHECK(std::abs(tls_rotation(std::numbers::pi, 0.3)(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("single-excitation sequence") {
  const double lambda = 2e-3;
  const PulseSequence s = sequence_for(superposition_target(1), lambda);
  REQUIRE(s.segments.size() == 2);
  CHECK(s.segments[0].kind == SegmentKind::tls_rotation);
  CHECK(s.segments[0].angle == doctest::Approx(std::numbers::pi / 2));
  CHECK(s.segments[1].kind == SegmentKind::free_jc);
  CHECK(s.segments[1].duration == doctest::Approx(std::numbers::pi / (2 * lambda)).epsilon(1e-12));
  CHECK(s.residual < 1e-12);

  // After the rotation the TLS is in an equal superposition.
  PulseSequence first = s;
  first.segments.resize(1);
  const DenseVector mid = apply_ideal(first, 3);
  CHECK(std::norm(mid(HilbertSpace::index(0, 0))) == doctest::Approx(0.5));
  CHECK(std::norm(mid(HilbertSpace::index(0, 1))) == doctest::Approx(0.5));
}

TEST_CASE("trivial and invalid targets") {
  DenseVector vac = DenseVector::Zero(3);
  vac(0) = 1.0;
  const PulseSequence s = sequence_for(vac, 2e-3);
  CHECK(s.segments.empty());
  CHECK(s.max_fock == 0);
  DenseVector bad = DenseVector::Ones(2);
  CHECK_THROWS_AS(sequence_for(bad, 2e-3), DomainError);
  CHECK_THROWS_AS(sequence_for(superposition_target(1), 0.0), DomainError);
  CHECK_THROWS_AS(superposition_target(0), DomainError);
}

TEST_CASE("ideal sequences reach their targets") {
  const double lambda = 2e-3;
  std::size_t last = 0;
  for (int m = 1; m <= 9; ++m) {
    const DenseVector t = superposition_target(m);
    const PulseSequence s = sequence_for(t, lambda);
    const DenseVector out = apply_ideal(s, m + 3);
    CHECK(1.0 - std::norm(joint(t, m + 3).dot(out)) < 1e-8);
    CHECK(s.segments.size() > last);
    CHECK(s.segments.size() <= 3 * static_cast<std::size_t>(m));
    last = s.segments.size();
    for (const auto& seg : s.segments) CHECK(seg.duration > 0.0);
  }
  // Random complex targets.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 6;
    DenseVector t(m + 1);
    for (auto& x : t) x = {g(rng), g(rng)};
    t.normalize();
    const DenseVector out = apply_ideal(sequence_for(t, lambda), m + 2);
    CHECK(1.0 - std::norm(joint(t, m + 2).dot(out)) < 1e-8);
  }
  CHECK_THROWS_AS(apply_ideal(sequence_for(superposition_target(3), lambda), 3), DomainError);
}

TEST_CASE("closed-system simulation matches the ideal construction") {
  SystemParams p = fig2a();
  p.mech_damping = 0.0;
  p.tls_decay = 0.0;
  p.cavity_decay = 1e-4;  // pushes the residual heating below 1e-9
  for (int m : {1, 2, 3, 5, 9}) {
    const PulseSequence s = sequence_for(superposition_target(m), p.tls_coupling);
    SimulationOptions o;
    o.n_b = m + 3;
    const auto r = simulate_sequence(s, p, 0.0, o);
    CHECK(r.fidelity_joint > 1 - 1e-8);
    CHECK(r.fidelity_resonator > 1 - 1e-8);
    CHECK(r.boundaries_checked == s.segments.size());
  }
  // Finite-drive rotations keep the exchange on; the error scales as (lambda / Omega)^2.
  const PulseSequence s1 = sequence_for(superposition_target(1), p.tls_coupling);
  SimulationOptions fd;
  fd.realism = Realism::finite_drive;
  fd.n_b = 4;
  const double f = simulate_sequence(s1, p, 0.0, fd).fidelity_joint;
  CHECK(f > 0.97);
  CHECK(f < 1.0 - 1e-6);
}

TEST_CASE("dissipative fidelity trends") {
  const SystemParams p = fig2a();
  const std::vector<int> ms{1, 2, 3};
  const std::vector<double> ts{0.01, 0.1, 0.5, 1.0};
  const auto pts = fidelity_curve(p, ms, ts);
  REQUIRE(pts.size() == 12);
  for (std::size_t mi = 0; mi < ms.size(); ++mi)
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      const auto& x = pts[mi * ts.size() + ti];
      CHECK(x.m == ms[mi]);
      CHECK(x.fidelity_resonator >= x.fidelity_joint - 1e-12);
      if (ti > 0) CHECK(x.fidelity_resonator <= pts[mi * ts.size() + ti - 1].fidelity_resonator + 1e-12);
      if (mi > 0) CHECK(x.fidelity_resonator <= pts[(mi - 1) * ts.size() + ti].fidelity_resonator + 1e-12);
    }
  // The cooled initial state bounds the achievable fidelity.
  const auto r = simulate_sequence(sequence_for(superposition_target(1), p.tls_coupling), p, 0.1);
  CHECK(r.initial_ground < 1.0);
  CHECK(r.fidelity_joint < r.initial_ground + 1e-3);
}

TEST_CASE("blockade at low temperature") {
  const SystemParams p = fig3();
  const double l = p.tls_coupling;
  std::vector<double> w;
  for (int i = -20; i <= 20; ++i) w.push_back(1.0 + l * i / 10.0);
  const std::vector<double> t{0.01};
  const auto scan = blockade_scan(p, w, t);
  CHECK(scan.warnings.empty());
  REQUIRE(scan.points.size() == w.size());
  auto g = [&](int i) { return scan.points[i].g2c; };
  // Minima at omega_m -+ lambda.
  int lo = 0, hi = 20;
  for (int i = 0; i < 20; ++i) if (g(i) < g(lo)) lo = i;
  for (int i = 21; i < 41; ++i) if (g(i) < g(hi)) hi = i;
  CHECK(std::abs(lo - 10) <= 1);
  CHECK(std::abs(hi - 30) <= 1);
  CHECK(g(lo) < 1.0);
  CHECK(g(hi) < 1.0);
  for (const auto& pt : scan.points) {
    if (pt.g2c < 1.0) CHECK(pt.g2c >= pt.g2m);
    CHECK(pt.cutoff_change < 1e-6);
  }
}

TEST_CASE("blockade disappears when hot") {
  const SystemParams p = fig3();
  const double l = p.tls_coupling;
  const std::vector<double> w{1.0 - 1.5 * l, 1.0 - l, 1.0 - 0.5 * l, 1.0, 1.0 + l};
  const std::vector<double> t{1.0};
  for (const auto& pt : blockade_scan(p, w, t).points) CHECK(pt.g2c >= 1.0);
}

TEST_CASE("blockade warnings and errors") {
  SystemParams strong = fig3();
  strong.drive = {0.5 * strong.tls_coupling, 0.0};
  const std::vector<double> w{1.0}, t{0.05};
  BlockadeOptions o;
  o.converge = false;
  const auto s = blockade_scan(strong, w, t, o);
  CHECK(s.warnings.size() == 1);
  CHECK(s.warnings[0].code == "blockade.strong_drive");

  SystemParams weak = fig3();
  weak.tls_coupling = 1e-6;
  weak.drive = {1e-7, 0.0};
  const auto d = blockade_scan(weak, w, t, o);
  REQUIRE(d.warnings.size() == 1);
  CHECK(d.warnings[0].code == "blockade.degenerate");
  // Decoupled drive leaves the cooled resonator thermal.
  CHECK(d.points[0].g2m == doctest::Approx(2.0).epsilon(1e-3));

  // Failures carry the grid coordinates.
  BlockadeOptions tight;
  tight.n_b = 20;
  tight.max_n_b = 30;
  try {
    blockade_scan(fig3(), w, t, tight);
    FAIL("expected a cutoff failure");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("wmu=1.000000, T=0.050000") != std::string::npos);
  }
}
