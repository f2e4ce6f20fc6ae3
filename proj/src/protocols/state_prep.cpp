#include "tlsom/protocols/state_prep.hpp"

#include <cmath>
#include <numbers>

#include "tlsom/engine/correlation.hpp"
#include "tlsom/engine/liouvillian.hpp"
#include "tlsom/engine/steady_state.hpp"
#include "tlsom/error.hpp"
#include "tlsom/parallel.hpp"

namespace tlsom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-14;

int idx(int n, int s) { return HilbertSpace::index(n, s); }

/// Resonant JC propagator in the frame rotating at omega_m (t may be negative).
void apply_jc(DenseVector& psi, double coupling, double t) {
  const int n_b = static_cast<int>(psi.size()) / 2;
  const cplx i(0.0, 1.0);
  for (int n = 1; n < n_b; ++n) {
    const double th = coupling * std::sqrt(double(n)) * t;
    const double c = std::cos(th), s = std::sin(th);
    const cplx g = psi(idx(n, 0)), e = psi(idx(n - 1, 1));
    psi(idx(n, 0)) = c * g - i * s * e;
    psi(idx(n - 1, 1)) = -i * s * g + c * e;
  }
}

void apply_tls(DenseVector& psi, const Eigen::Matrix2cd& u) {
  for (Eigen::Index n = 0; n < psi.size() / 2; ++n) {
    const cplx g = psi(2 * n), e = psi(2 * n + 1);
    psi(2 * n) = u(0, 0) * g + u(0, 1) * e;
    psi(2 * n + 1) = u(1, 0) * g + u(1, 1) * e;
  }
}

Eigen::Matrix2cd stark(double phase) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
  p(1, 1) = std::polar(1.0, -phase);
  return p;
}

double wrap(double phase) {
  double w = std::fmod(phase, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

double arg_or_zero(cplx z) { return std::abs(z) > kTiny ? std::arg(z) : 0.0; }

DenseVector joint_target(const DenseVector& fock, int n_b) {
  DenseVector psi = DenseVector::Zero(2 * n_b);
  for (Eigen::Index n = 0; n < fock.size(); ++n) psi(idx(static_cast<int>(n), 0)) = fock(n);
  return psi;
}

}  // namespace

Eigen::Matrix2cd tls_rotation(double theta, double phi) {
  const cplx i(0.0, 1.0);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Eigen::Matrix2cd u;
  u << c, -i * std::polar(1.0, phi) * s, -i * std::polar(1.0, -phi) * s, c;
  return u;
}

DenseVector superposition_target(int m) {
  if (m < 1) throw DomainError("superposition_target: M must be at least 1");
  DenseVector t = DenseVector::Zero(m + 1);
  t(0) = t(m) = 1.0 / std::sqrt(2.0);
  return t;
}

PulseSequence law_eberly_sequence(std::span<const cplx> target, double coupling, const SequenceOptions& o) {
  if (!(coupling > 0.0)) throw DomainError("law_eberly_sequence: lambda must be positive");
  if (target.empty()) throw DomainError("law_eberly_sequence: empty target");
  DenseVector fock = Eigen::Map<const DenseVector>(target.data(), static_cast<Eigen::Index>(target.size()));
  if (std::abs(fock.norm() - 1.0) > 1e-10) throw DomainError("law_eberly_sequence: target is not normalized");
  int m = static_cast<int>(fock.size()) - 1;
  while (m > 0 && std::abs(fock(m)) <= kTiny) --m;

  PulseSequence seq;
  seq.target = fock.head(m + 1);
  seq.max_fock = m;
  seq.coupling = coupling;
  seq.drive_strength = o.drive_strength > 0.0 ? o.drive_strength : coupling / kMuchLess;
  seq.stark_shift = o.stark_shift > 0.0 ? o.stark_shift : coupling / kMuchLess;

  struct Step {
    double t = 0.0, theta = 0.0, phi = 0.0, phase = 0.0;
  };
  std::vector<Step> steps;
  DenseVector psi = joint_target(seq.target, m + 1);
  const cplx i(0.0, 1.0);
  for (int n = m; n >= 1; --n) {
    Step st;
    const cplx a = psi(idx(n, 0)), b = psi(idx(n - 1, 1));
    if (std::abs(a) > kTiny) {
      double th = kPi / 2.0;
      if (std::abs(b) > kTiny) {
        th = std::atan((i * a / b).real());
        if (th < 0.0) th += kPi;
      }
      st.t = th / (coupling * std::sqrt(double(n)));
      apply_jc(psi, coupling, -st.t);
    }
    const cplx x = psi(idx(n - 1, 0)), y = psi(idx(n - 1, 1));
    if (std::abs(y) > kTiny) {
      st.theta = 2.0 * std::atan2(std::abs(y), std::abs(x));
      st.phi = arg_or_zero(x) - std::arg(y) + kPi / 2.0;
      apply_tls(psi, tls_rotation(st.theta, st.phi));
    }
    if (n >= 2) {
      const cplx r = psi(idx(n - 1, 0)), y2 = psi(idx(n - 2, 1));
      if (std::abs(r) > kTiny && std::abs(y2) > kTiny) {
        st.phase = wrap(std::arg(r) - std::arg(y2) + kPi / 2.0);
        apply_tls(psi, stark(-st.phase));
      }
    }
    steps.push_back(st);
  }
  // Unreachable targets cannot occur for finite support.
  if (std::abs(std::abs(psi(idx(0, 0))) - 1.0) > 1e-8)
    throw SolverError("law_eberly_sequence: backward evolution did not reach |0, g>");

  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->phase > 0.0)
      seq.segments.push_back({SegmentKind::stark_detune, it->phase / seq.stark_shift, it->phase, 0.0});
    if (it->theta > 0.0)
      seq.segments.push_back({SegmentKind::tls_rotation, it->theta / (2.0 * seq.drive_strength), it->theta,
                              wrap(it->phi + kPi)});
    if (it->t > 0.0) seq.segments.push_back({SegmentKind::free_jc, it->t, 0.0, 0.0});
  }
  const DenseVector out = apply_ideal(seq, m + 2);
  seq.residual = 1.0 - std::norm(joint_target(seq.target, m + 2).dot(out));
  return seq;
}

DenseVector apply_ideal(const PulseSequence& seq, int n_b) {
  if (n_b <= seq.max_fock) throw DomainError("apply_ideal: cutoff below the target support");
  DenseVector psi = DenseVector::Zero(2 * n_b);
  psi(0) = 1.0;
  for (const auto& s : seq.segments) {
    switch (s.kind) {
      case SegmentKind::tls_rotation: apply_tls(psi, tls_rotation(s.angle, s.phase)); break;
      case SegmentKind::free_jc: apply_jc(psi, seq.coupling, s.duration); break;
      case SegmentKind::stark_detune: apply_tls(psi, stark(s.angle)); break;
      case SegmentKind::detune_off: break;
    }
  }
  return psi;
}

SimulationResult simulate_sequence(const PulseSequence& seq, const SystemParams& params, double kelvin,
                                   const SimulationOptions& o) {
  SystemParams p = params.with_temperature(kelvin);
  p.drive = 0.0;
  const int n_b = o.n_b > 0 ? o.n_b : std::max(seq.max_fock + 2, default_cutoff(p));
  if (n_b < seq.max_fock + 2) throw DomainError("simulate_sequence: cutoff too small for the target");

  LiouvillianOptions cooled;
  cooled.frame = Frame::rotating_at(1.0);
  const QuantumState initial = steady_state(build_liouvillian(p, n_b, cooled)).state;

  LiouvillianOptions bare = cooled;
  bare.mechanics = MechanicsModel::bare;
  SystemParams frozen_p = p;
  frozen_p.tls_coupling = 0.0;
  SystemParams stark_p = frozen_p;
  stark_p.detuning = p.detuning - seq.stark_shift;
  const Liouvillian jc = build_liouvillian(p, n_b, bare);
  const Liouvillian frozen = build_liouvillian(frozen_p, n_b, bare);
  const Liouvillian shifted = build_liouvillian(stark_p, n_b, bare);

  SimulationResult res{initial, 0.0, 0.0, initial.matrix()(0, 0).real(), n_b, 0};
  DenseVector v = initial.vec();
  const int d = 2 * n_b;
  auto check = [&] {
    if (!o.check_states) return;
    QuantumState::from_vec(v, d).check(1e-8, 1e-8, 1e-9);
    ++res.boundaries_checked;
  };
  for (const auto& s : seq.segments) {
    switch (s.kind) {
      case SegmentKind::tls_rotation:
        if (o.realism == Realism::instantaneous) {
          DenseMatrix u = DenseMatrix::Zero(d, d);
          const Eigen::Matrix2cd r = tls_rotation(s.angle, s.phase);
          for (int n = 0; n < n_b; ++n) u.block(2 * n, 2 * n, 2, 2) = r;
          const DenseMatrix rho = QuantumState::from_vec(v, d).matrix();
          v = QuantumState(u * rho * u.adjoint()).vec();
          v = propagate(frozen, v, s.duration, o.evolve);
        } else {
          SystemParams driven = p;
          driven.drive = std::polar(seq.drive_strength, s.phase);
          driven.drive_frequency = 1.0;
          v = propagate(build_liouvillian(driven, n_b, bare), v, s.duration, o.evolve);
        }
        break;
      case SegmentKind::free_jc: v = propagate(jc, v, s.duration, o.evolve); break;
      case SegmentKind::stark_detune: v = propagate(shifted, v, s.duration, o.evolve); break;
      case SegmentKind::detune_off: v = propagate(frozen, v, s.duration, o.evolve); break;
    }
    check();
  }
  res.final_state = QuantumState::from_vec(v, d);
  res.fidelity_joint = res.final_state.fidelity(joint_target(seq.target, n_b));
  DenseVector fock = DenseVector::Zero(n_b);
  fock.head(seq.target.size()) = seq.target;
  res.fidelity_resonator = (fock.adjoint() * resonator_reduced(res.final_state) * fock)(0, 0).real();
  return res;
}

std::vector<FidelityPoint> fidelity_curve(const SystemParams& params, std::span<const int> ms,
                                          std::span<const double> temperatures, const SimulationOptions& o,
                                          const SequenceOptions& so) {
  std::vector<PulseSequence> seqs;
  for (int m : ms) {
    const DenseVector t = superposition_target(m);
    seqs.push_back(law_eberly_sequence({t.data(), static_cast<std::size_t>(t.size())}, params.tls_coupling, so));
  }
  std::vector<FidelityPoint> out(ms.size() * temperatures.size());
  parallel_for(out.size(), [&](std::size_t k) {
    const std::size_t mi = k / temperatures.size();
    const double t = temperatures[k % temperatures.size()];
    const SimulationResult r = simulate_sequence(seqs[mi], params, t, o);
    out[k] = {ms[mi], t, r.fidelity_resonator, r.fidelity_joint};
  });
  return out;
}

}  // namespace tlsom
