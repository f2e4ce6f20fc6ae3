#include "tlsom/engine/three_mode.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tlsom/engine/steady_state.hpp"
#include "tlsom/error.hpp"

namespace tlsom {

namespace {

SparseMatrix ladder_op(int n) {
  SparseMatrix a(n, n);
  for (int k = 1; k < n; ++k) a.insert(k - 1, k) = std::sqrt(double(k));
  return a;
}

SparseMatrix eye(int n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix kron3(const SparseMatrix& x, const SparseMatrix& y, const SparseMatrix& z) {
  SparseMatrix yz = Eigen::kroneckerProduct(y, z);
  SparseMatrix out = Eigen::kroneckerProduct(x, yz);
  out.makeCompressed();
  return out;
}

struct ThreeModeOps {
  SparseMatrix a, b, sm, sz;
};

ThreeModeOps three_mode_ops(int n_a, int n_b) {
  SparseMatrix sm(2, 2), sz(2, 2);
  sm.insert(0, 1) = 1.0;
  sz.insert(0, 0) = -1.0;
  sz.insert(1, 1) = 1.0;
  return {kron3(ladder_op(n_a), eye(n_b), eye(2)), kron3(eye(n_a), ladder_op(n_b), eye(2)),
          kron3(eye(n_a), eye(n_b), sm), kron3(eye(n_a), eye(n_b), sz)};
}

}  // namespace

Liouvillian build_three_mode_liouvillian(const SystemParams& p, int n_a, int n_b) {
  if (n_a < 2 || n_a > 4 || n_b < 2 || n_b > 6)
    throw DomainError("three-mode model is validation-only: need 2 <= n_a <= 4 and 2 <= n_b <= 6");
  if (p.drive != cplx(0.0, 0.0)) throw DomainError("three-mode model does not support microwave drive");
  const ThreeModeOps o = three_mode_ops(n_a, n_b);
  const SparseMatrix ad = adjoint(o.a), bd = adjoint(o.b), sp = adjoint(o.sm);
  SparseMatrix h = -p.laser_detuning * SparseMatrix(ad * o.a) + SparseMatrix(bd * o.b) +
                   (0.5 * p.tls_splitting()) * o.sz;
  h += p.tls_coupling * SparseMatrix(sp * o.b + bd * o.sm);
  h += p.om_coupling * SparseMatrix((o.a + ad) * (o.b + bd));
  const double nm = p.mech_occupation(), nt = p.tls_occupation();
  Liouvillian l = make_liouvillian(h, {{o.a, p.cavity_decay},
                                       {o.b, p.mech_damping * (nm + 1.0)},
                                       {bd, p.mech_damping * nm},
                                       {o.sm, p.tls_decay * (nt + 1.0)},
                                       {sp, p.tls_decay * nt}});
  return l;
}

ThreeModeResult three_mode_steady_state(const SystemParams& p, int n_a, int n_b) {
  const Liouvillian l = build_three_mode_liouvillian(p, n_a, n_b);
  QuantumState ss = steady_state(l).state;
  const ThreeModeOps o = three_mode_ops(n_a, n_b);
  const double occ_a = ss.expectation(SparseMatrix(adjoint(o.a) * o.a)).real();
  const double occ_b = ss.expectation(SparseMatrix(adjoint(o.b) * o.b)).real();
  return {occ_a, occ_b, std::move(ss)};
}

}  // namespace tlsom
