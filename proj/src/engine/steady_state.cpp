#include "tlsom/engine/steady_state.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include "tlsom/error.hpp"

namespace tlsom {

namespace {

/// The system with the row of the first diagonal element replaced by the trace.
struct TraceSystem {
  SparseMatrix a;
  DenseVector rhs;
  std::vector<Eigen::Index> members;  // local -> global vec index
};

TraceSystem trace_system(const SparseMatrix& block, const std::vector<Eigen::Index>& members, int d) {
  const auto n = static_cast<Eigen::Index>(members.size());
  std::vector<Eigen::Index> diag;
  for (Eigen::Index m = 0; m < n; ++m)
    if (members[m] % (d + 1) == 0) diag.push_back(m);
  if (diag.empty()) throw SolverError("steady_state: sector holds no populations");
  const Eigen::Index pinned = diag.front();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(block.nonZeros()) + diag.size());
  for (Eigen::Index col = 0; col < block.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(block, col); it; ++it)
      if (it.row() != pinned) t.emplace_back(it.row(), col, it.value());
  for (Eigen::Index m : diag) t.emplace_back(pinned, m, 1.0);
  TraceSystem s;
  s.a.resize(n, n);
  s.a.setFromTriplets(t.begin(), t.end());
  s.a.makeCompressed();
  s.rhs = DenseVector::Zero(n);
  s.rhs(pinned) = 1.0;
  s.members = members;
  return s;
}

DenseVector solve_direct(const TraceSystem& s) {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(s.a);
  if (lu.info() != Eigen::Success) throw SolverError("steady_state: degenerate null space (singular system)");
  DenseVector x = lu.solve(s.rhs);
  // One refinement step.
  const DenseVector r = s.rhs - s.a * x;
  x += lu.solve(r);
  return x;
}

DenseVector solve_iterative(const TraceSystem& s, const SteadyStateOptions& o, int& iterations) {
  Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<cplx>> solver;
  solver.preconditioner().setDroptol(1e-8);
  solver.preconditioner().setFillfactor(20);
  solver.setMaxIterations(o.max_iterations);
  solver.setTolerance(o.iterative_tol);
  solver.compute(s.a);
  if (solver.info() != Eigen::Success) throw SolverError("steady_state: preconditioner failed");
  DenseVector x = solver.solve(s.rhs);
  iterations = static_cast<int>(solver.iterations());
  if (solver.info() != Eigen::Success && solver.error() > 1e-9)
    throw SolverError("steady_state: iterative solve did not converge");
  return x;
}

}  // namespace

SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& o) {
  const int d = l.dim;
  const Eigen::Index full = static_cast<Eigen::Index>(d) * d;
  TraceSystem sys;
  if (o.use_symmetry && !l.excitation.empty()) {
    Sector s = sector(l, 0);
    sys = trace_system(s.block, s.members, d);
  } else {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(full));
    for (Eigen::Index i = 0; i < full; ++i) all[i] = i;
    sys = trace_system(l.matrix, all, d);
  }
  const auto n = static_cast<Eigen::Index>(sys.members.size());
  bool direct = o.method == SteadyStateMethod::direct ||
                (o.method == SteadyStateMethod::automatic && n <= o.direct_limit);
  int iterations = 0;
  const DenseVector x = direct ? solve_direct(sys) : solve_iterative(sys, o, iterations);
  if (!x.allFinite()) throw SolverError("steady_state: degenerate null space (non-finite solution)");
  DenseVector v = DenseVector::Zero(full);
  for (Eigen::Index m = 0; m < n; ++m) v(sys.members[m]) = x(m);
  QuantumState state = physical_part(QuantumState::from_vec(v, d).matrix());
  const double residual = (l.matrix * state.vec()).norm();
  if (!(residual < o.residual_tol))
    throw SolverError("steady_state: residual " + std::to_string(residual) + " above tolerance");
  return {std::move(state), residual, direct ? "direct" : "iterative", iterations};
}

}  // namespace tlsom
