#include "tlsom/engine/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tlsom/error.hpp"
#include "tlsom/jc_ladder.hpp"
#include "tlsom/mechanics.hpp"
#include "tlsom/secular.hpp"

namespace tlsom {

namespace {

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

SparseMatrix identity(int d) {
  SparseMatrix id(d, d);
  id.setIdentity();
  return id;
}

}  // namespace

Liouvillian make_liouvillian(const SparseMatrix& h, const std::vector<Dissipator>& dissipators,
                             std::vector<int> excitation) {
  const int d = static_cast<int>(h.rows());
  const SparseMatrix id = identity(d);
  // sum_k r_k c_k^dag c_k, accumulated once.
  SparseMatrix k(d, d);
  SparseMatrix jumps(d * d, d * d);
  for (const auto& c : dissipators) {
    if (c.rate == 0.0) continue;
    if (c.rate < 0.0) throw DomainError("make_liouvillian: negative dissipation rate");
    const SparseMatrix cd = adjoint(c.op);
    k += c.rate * SparseMatrix(cd * c.op);
    jumps += c.rate * kron(SparseMatrix(c.op.conjugate()), c.op);
  }
  const cplx i(0.0, 1.0);
  const SparseMatrix h_eff = h - 0.5 * i * k;  // -i(H_eff rho - rho H_eff^dag) plus jumps
  SparseMatrix l = -i * kron(id, h_eff) + i * kron(SparseMatrix(SparseMatrix(h_eff.adjoint()).transpose()), id);
  l += jumps;
  l.prune(cplx(0.0, 0.0));
  l.makeCompressed();
  Liouvillian out;
  out.matrix = std::move(l);
  out.dim = d;
  out.excitation = std::move(excitation);
  return out;
}

SparseMatrix system_hamiltonian(const SystemParams& p, const Operators& ops, const Frame& frame) {
  const bool driven = p.drive != cplx(0.0, 0.0);
  if (driven && !frame.rotating)
    throw DomainError("drive requires the rotating frame; the lab-frame Liouvillian would be time dependent");
  const double w = frame.offset();
  const SparseMatrix nb = ops.bdag * ops.b;
  SparseMatrix h = (1.0 - w) * nb + (0.5 * (p.tls_splitting() - w)) * ops.sigma_z;
  h += p.tls_coupling * SparseMatrix(ops.sigma_plus * ops.b + ops.bdag * ops.sigma_minus);
  if (driven) h += p.drive * ops.sigma_minus + std::conj(p.drive) * ops.sigma_plus;
  return h;
}

namespace {

SparseMatrix ket_bra(const std::vector<Eigen::Triplet<cplx>>& t, int d) {
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::vector<Dissipator> secular_dissipators(const SystemParams& p, const HilbertSpace& space, double damping,
                                            double occupation) {
  const int n_b = space.fock_levels();
  const int d = space.dim();
  const double nt = p.tls_occupation();
  const JCLadder ladder(p.detuning, p.tls_coupling, n_b - 1);
  const TransitionRates rates(ladder, damping, occupation, p.tls_decay, nt);
  // Eigenvector |n a> as (index, amplitude) pairs.
  auto vec = [&](int n, Branch a) {
    std::vector<std::pair<int, double>> v;
    if (n == 0) {
      v.emplace_back(HilbertSpace::index(0, 0), 1.0);
      return v;
    }
    v.emplace_back(HilbertSpace::index(n, 0), ladder.c(n, a));
    v.emplace_back(HilbertSpace::index(n - 1, 1), ladder.s(n, a));
    return v;
  };
  std::vector<Dissipator> out;
  for (int n = 1; n < n_b; ++n) {
    for (Branch a : kBranches) {
      for (Branch b : kBranches) {
        if (!JCLadder::exists(n, a, b)) continue;
        std::vector<Eigen::Triplet<cplx>> t;
        for (auto [i, x] : vec(n - 1, b))
          for (auto [j, y] : vec(n, a)) t.emplace_back(i, j, x * y);
        const SparseMatrix lower = ket_bra(t, d);
        out.push_back({lower, rates.down(n, a, b)});
        out.push_back({adjoint(lower), rates.up(n, a, b)});
      }
    }
  }
  // |n_b - 1, e> has no partner inside the truncation; let it decay.
  out.push_back({ket_bra({{HilbertSpace::index(n_b - 1, 0), HilbertSpace::index(n_b - 1, 1), 1.0}}, d),
                 p.tls_decay * (nt + 1.0)});
  return out;
}

}  // namespace

std::vector<Dissipator> system_dissipators(const SystemParams& p, const Operators& ops, MechanicsModel mechanics,
                                           DissipatorModel model) {
  double damping = p.mech_damping;
  double occupation = p.mech_occupation();
  if (mechanics == MechanicsModel::optomechanical) {
    const EffectiveMechanics eff = cooling_rates(p);
    if (!(eff.damping > 0.0)) throw DomainError("effective mechanical damping is not positive");
    damping = eff.damping;
    occupation = eff.occupation;
  }
  if (model == DissipatorModel::secular) return secular_dissipators(p, ops.space, damping, occupation);
  const double nt = p.tls_occupation();
  return {{ops.b, damping * (occupation + 1.0)},
          {ops.bdag, damping * occupation},
          {ops.sigma_minus, p.tls_decay * (nt + 1.0)},
          {ops.sigma_plus, p.tls_decay * nt}};
}

Liouvillian build_liouvillian(const SystemParams& p, int n_b, const LiouvillianOptions& options) {
  const bool driven = p.drive != cplx(0.0, 0.0);
  if (driven && options.dissipators == DissipatorModel::secular)
    throw DomainError("secular dissipators are defined without drive");
  const Operators ops = build_operators(n_b);
  const SparseMatrix h = system_hamiltonian(p, ops, options.frame);
  std::vector<int> labels;
  if (!driven)
    for (int i = 0; i < ops.space.dim(); ++i) labels.push_back(HilbertSpace::excitation(i));
  Liouvillian l = make_liouvillian(h, system_dissipators(p, ops, options.mechanics, options.dissipators),
                                   std::move(labels));
  l.frame = options.frame;
  l.driven = driven;
  return l;
}

double trace_defect(const Liouvillian& l) {
  const int d = l.dim;
  double worst = 0.0;
  for (Eigen::Index col = 0; col < l.matrix.outerSize(); ++col) {
    cplx sum = 0.0;
    for (SparseMatrix::InnerIterator it(l.matrix, col); it; ++it)
      if (it.row() % (d + 1) == 0) sum += it.value();
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

Sector sector(const Liouvillian& l, int k) {
  if (l.excitation.empty()) throw DomainError("sector: Liouvillian has no excitation symmetry");
  const Eigen::Index d = l.dim;
  Sector s;
  s.k = k;
  s.local.assign(static_cast<std::size_t>(d * d), -1);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      if (l.excitation[i] - l.excitation[j] == k) {
        s.local[i + d * j] = static_cast<Eigen::Index>(s.members.size());
        s.members.push_back(i + d * j);
      }
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t m = 0; m < s.members.size(); ++m) {
    for (SparseMatrix::InnerIterator it(l.matrix, s.members[m]); it; ++it) {
      const Eigen::Index row = s.local[it.row()];
      if (row < 0) {
        if (std::abs(it.value()) > 0.0) throw DomainError("sector: Liouvillian couples excitation sectors");
        continue;
      }
      t.emplace_back(row, static_cast<Eigen::Index>(m), it.value());
    }
  }
  const auto n = static_cast<Eigen::Index>(s.members.size());
  s.block.resize(n, n);
  s.block.setFromTriplets(t.begin(), t.end());
  s.block.makeCompressed();
  return s;
}

}  // namespace tlsom
