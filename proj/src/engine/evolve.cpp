#include "tlsom/engine/evolve.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "tlsom/error.hpp"

namespace tlsom {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Dopri {
 public:
  Dopri(const SparseMatrix& l, const EvolveOptions& o) : l_(l), o_(o) {}

  /// Advances y from 0 to t.
  DenseVector run(DenseVector y, double t) {
    if (t <= 0.0) return y;
    double now = 0.0;
    DenseVector k1 = l_ * y;
    if (h_ <= 0.0) {
      const double scale = std::max(1e-300, k1.cwiseAbs().maxCoeff());
      h_ = std::min(t, 0.01 / scale);
    }
    while (now < t) {
      double h = std::min(h_, t - now);
      if (h < o_.min_step * std::max(1.0, std::abs(now)) && t - now > h)
        throw SolverError("evolve: step-size underflow");
      const DenseVector k2 = l_ * (y + h * a21 * k1);
      const DenseVector k3 = l_ * (y + h * (a31 * k1 + a32 * k2));
      const DenseVector k4 = l_ * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const DenseVector k5 = l_ * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const DenseVector k6 = l_ * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      DenseVector next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const DenseVector k7 = l_ * next;
      const DenseVector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double norm = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = o_.atol + o_.rtol * std::max(std::abs(y(i)), std::abs(next(i)));
        norm = std::max(norm, std::abs(err(i)) / sc);
      }
      if (!std::isfinite(norm)) throw SolverError("evolve: non-finite state");
      if (norm <= 1.0) {
        now += h;
        y = std::move(next);
        k1 = k7;
      }
      const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (h == h_ || norm > 1.0) h_ = h * factor;
      if (h_ < o_.min_step * std::max(1.0, std::abs(now)) && now < t)
        throw SolverError("evolve: step-size underflow");
    }
    return y;
  }

 private:
  const SparseMatrix& l_;
  EvolveOptions o_;
  double h_ = 0.0;
};

bool use_exact(const Liouvillian& l, const EvolveOptions& o) {
  if (o.method == EvolveMethod::exact) return true;
  if (o.method == EvolveMethod::adaptive) return false;
  return l.matrix.rows() <= o.exact_limit;
}

}  // namespace

DenseVector propagate(const Liouvillian& l, const DenseVector& rho0, double t, const EvolveOptions& o) {
  if (t < 0.0) throw DomainError("propagate: negative time");
  if (use_exact(l, o)) {
    const DenseMatrix gen = DenseMatrix(l.matrix) * t;
    return gen.exp() * rho0;
  }
  Dopri stepper(l.matrix, o);
  return stepper.run(rho0, t);
}

std::vector<QuantumState> evolve(const QuantumState& rho0, const Liouvillian& l, std::span<const double> t_grid,
                                 const EvolveOptions& o) {
  if (rho0.dim() != l.dim) throw DomainError("evolve: state and Liouvillian dimensions differ");
  std::vector<QuantumState> out;
  out.reserve(t_grid.size());
  DenseVector y = rho0.vec();
  double last = 0.0;
  const bool exact = use_exact(l, o);
  const DenseMatrix dense = exact ? DenseMatrix(l.matrix) : DenseMatrix();
  Dopri stepper(l.matrix, o);
  for (double t : t_grid) {
    if (t < last) throw DomainError("evolve: time grid must be non-decreasing and non-negative");
    if (t > last) y = exact ? DenseVector(DenseMatrix(dense * (t - last)).exp() * y) : stepper.run(y, t - last);
    last = t;
    out.push_back(QuantumState::from_vec(y, l.dim));
  }
  return out;
}

}  // namespace tlsom
