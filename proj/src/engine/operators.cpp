#include "tlsom/engine/operators.hpp"

#include <cmath>
#include <vector>

#include "tlsom/error.hpp"

namespace tlsom {

HilbertSpace::HilbertSpace(int fock_levels) : n_b_(fock_levels) {
  if (fock_levels < 2) throw DomainError("Fock cutoff must be at least 2");
}

SparseMatrix adjoint(const SparseMatrix& m) { return SparseMatrix(m.adjoint()); }

Operators build_operators(int n_b) {
  if (n_b < 2) throw DomainError("build_operators: n_b must be at least 2");
  HilbertSpace space(n_b);
  const int d = space.dim();
  using T = Eigen::Triplet<cplx>;
  std::vector<T> b, sm, sz, id;
  for (int n = 0; n < n_b; ++n) {
    for (int s = 0; s < 2; ++s) {
      const int i = HilbertSpace::index(n, s);
      if (n + 1 < n_b) b.emplace_back(i, HilbertSpace::index(n + 1, s), std::sqrt(double(n + 1)));
      sz.emplace_back(i, i, s == 1 ? 1.0 : -1.0);
      id.emplace_back(i, i, 1.0);
    }
    sm.emplace_back(HilbertSpace::index(n, 0), HilbertSpace::index(n, 1), 1.0);
  }
  auto make = [d](const std::vector<T>& t) {
    SparseMatrix m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  };
  Operators ops{space, make(b), {}, make(sm), {}, make(sz), make(id)};
  ops.bdag = adjoint(ops.b);
  ops.sigma_plus = adjoint(ops.sigma_minus);
  return ops;
}

}  // namespace tlsom
