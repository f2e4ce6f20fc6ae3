#include "tlsom/engine/correlation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/SparseLU>

#include "tlsom/engine/steady_state.hpp"
#include "tlsom/error.hpp"
#include "tlsom/parallel.hpp"

namespace tlsom {

AdiabaticCoefficients adiabatic_coefficients(const SystemParams& p) {
  const cplx i(0.0, 1.0);
  const double half = 0.5 * p.cavity_decay;
  return {-i * p.om_coupling / (half - i * (1.0 + p.laser_detuning)),
          -i * p.om_coupling / (half + i * (1.0 - p.laser_detuning))};
}

int default_cutoff(const SystemParams& p) {
  return std::max(20, static_cast<int>(std::ceil(10.0 * (p.mech_occupation() + 1.0))));
}

namespace {

/// Resolvent traces Tr[probe (z - L_k)^-1 source] on one sector.
std::vector<double> sector_response(const Liouvillian& l, int k, const DenseMatrix& source_op,
                                    const DenseMatrix& probe_op, std::span<const double> grid, double weight) {
  const Sector s = sector(l, k);
  const int d = l.dim;
  const auto n = static_cast<Eigen::Index>(s.members.size());
  DenseVector src(n), probe(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::Index i = s.members[m] % d, j = s.members[m] / d;
    src(m) = source_op(i, j);
    probe(m) = probe_op(j, i);  // Tr(P Y) = sum_ij P_ji Y_ij
  }
  SparseMatrix id(n, n);
  id.setIdentity();
  const double shift = k * l.frame.offset();
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t g) {
    const cplx z(0.0, grid[g] + shift);
    SparseMatrix a = z * id - s.block;
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw SolverError("correlation_spectrum: resolvent factorization failed");
    const DenseVector y = lu.solve(src);
    out[g] = weight * probe.cwiseProduct(y).sum().real();
  });
  return out;
}

}  // namespace

std::vector<double> correlation_spectrum_at(const SystemParams& p, const QuantumState& steady, int n_b,
                                            std::span<const double> grid, Sidebands sidebands,
                                            DissipatorModel dissipators) {
  LiouvillianOptions lo;
  lo.frame = Frame::rotating_at(1.0);
  lo.dissipators = dissipators;
  const Liouvillian l = build_liouvillian(p, n_b, lo);
  const Operators ops = build_operators(n_b);
  const AdiabaticCoefficients c = adiabatic_coefficients(p);
  const DenseMatrix rho = steady.matrix();
  const DenseMatrix b = DenseMatrix(ops.b), bd = DenseMatrix(ops.bdag);
  std::vector<double> total(grid.size(), 0.0);
  const double scale = p.cavity_decay / std::numbers::pi;
  if (sidebands != Sidebands::red) {
    // <b^dag(tau) b(0)>: source b rho lives in sector -1.
    const auto blue = sector_response(l, -1, b * rho, bd, grid, scale * std::norm(c.blue));
    for (std::size_t g = 0; g < grid.size(); ++g) total[g] += blue[g];
  }
  if (sidebands != Sidebands::blue) {
    const auto red = sector_response(l, 1, bd * rho, b, grid, scale * std::norm(c.red));
    for (std::size_t g = 0; g < grid.size(); ++g) total[g] += red[g];
  }
  return total;
}

NumericSpectrum correlation_spectrum(const SystemParams& p, std::span<const double> grid,
                                     const CorrelationOptions& o) {
  if (p.drive != cplx(0.0, 0.0)) throw DomainError("correlation_spectrum: requires zero microwave drive");
  NumericSpectrum out;
  out.grid.assign(grid.begin(), grid.end());
  out.warnings = regime_flags(p).warnings();
  int n_b = o.n_b > 0 ? o.n_b : default_cutoff(p);
  LiouvillianOptions lo;
  lo.dissipators = o.dissipators;
  auto compute = [&](int cutoff, double& occupation) {
    const QuantumState ss = steady_state(build_liouvillian(p, cutoff, lo)).state;
    occupation = cavity_occupation(ss, p);
    return correlation_spectrum_at(p, ss, cutoff, grid, o.sidebands, o.dissipators);
  };
  out.values = compute(n_b, out.cavity_occupation);
  out.n_b = n_b;
  if (!o.converge || grid.empty()) return out;
  while (true) {
    const int next = 2 * n_b;
    if (next > o.max_n_b) throw SolverError("correlation_spectrum: cutoff did not converge");
    double occ = 0.0;
    std::vector<double> refined = compute(next, occ);
    double peak = 0.0;
    for (double v : refined) peak = std::max(peak, std::abs(v));
    const double change = peak > 0.0 ? max_change(out.values, refined) / peak : 0.0;
    out.values = std::move(refined);
    out.cavity_occupation = occ;
    out.n_b = next;
    out.cutoff_change = change;
    if (change < o.tolerance) return out;
    n_b = next;
  }
}

namespace {

struct Term {
  cplx coef;
  const DenseMatrix* op;
  bool creation;
};

/// Sum of Tr(rho X1 X2 ... ) over the ordered choices that are balanced.
cplx balanced_moment(const DenseMatrix& rho, const std::vector<std::array<Term, 2>>& factors) {
  const std::size_t n = factors.size();
  cplx total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int creations = 0;
    cplx coef = 1.0;
    DenseMatrix prod = DenseMatrix::Identity(rho.rows(), rho.cols());
    for (std::size_t f = 0; f < n; ++f) {
      const Term& t = factors[f][(mask >> f) & 1u];
      creations += t.creation ? 1 : 0;
      coef *= t.coef;
      prod = prod * (*t.op);
    }
    if (2 * creations != static_cast<int>(n) || coef == cplx(0.0, 0.0)) continue;
    total += coef * (prod * rho).trace();
  }
  return total;
}

struct Moments {
  double n1, n2;  // <A^dag A>, <A^dag A^dag A A>
};

Moments cavity_moments(const QuantumState& steady, cplx c1, cplx c2) {
  const int n_b = steady.dim() / 2;
  const Operators ops = build_operators(n_b);
  const DenseMatrix b = DenseMatrix(ops.b), bd = DenseMatrix(ops.bdag);
  const std::array<Term, 2> a_dag{Term{std::conj(c1), &bd, true}, Term{std::conj(c2), &b, false}};
  const std::array<Term, 2> a{Term{c1, &b, false}, Term{c2, &bd, true}};
  const DenseMatrix& rho = steady.matrix();
  return {balanced_moment(rho, {a_dag, a}).real(), balanced_moment(rho, {a_dag, a_dag, a, a}).real()};
}

}  // namespace

double cavity_occupation(const QuantumState& steady, const SystemParams& p) {
  const AdiabaticCoefficients c = adiabatic_coefficients(p);
  return cavity_moments(steady, c.blue, c.red).n1;
}

CavityG2 g2_cavity(const QuantumState& steady, const SystemParams& p) {
  const AdiabaticCoefficients c = adiabatic_coefficients(p);
  const Moments first = cavity_moments(steady, c.blue, c.red);
  const Moments zeroth = cavity_moments(steady, c.blue, 0.0);
  if (!(first.n1 > 0.0) || !(zeroth.n1 > 0.0)) throw DomainError("g2_cavity: cavity occupation vanishes");
  return {first.n2 / (first.n1 * first.n1), zeroth.n2 / (zeroth.n1 * zeroth.n1)};
}

double g2_mech(const QuantumState& steady) {
  const int n_b = steady.dim() / 2;
  const Operators ops = build_operators(n_b);
  const SparseMatrix nb = ops.bdag * ops.b;
  const double n1 = steady.expectation(nb).real();
  if (!(n1 > 0.0)) throw DomainError("g2_mech: resonator occupation vanishes");
  const SparseMatrix n2 = ops.bdag * ops.bdag * ops.b * ops.b;
  return steady.expectation(n2).real() / (n1 * n1);
}

}  // namespace tlsom
