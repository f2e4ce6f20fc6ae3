#include "tlsom/jc_ladder.hpp"

#include <cmath>

#include "tlsom/error.hpp"

namespace tlsom {

JCLadder::JCLadder(double detuning, double coupling, int n_max)
    : detuning_(detuning), coupling_(coupling), n_max_(n_max) {
  if (n_max < 1) throw DomainError("jc_eigensystem: n_max must be at least 1");
  const auto slots = static_cast<std::size_t>(2 * (n_max + 1));
  energy_.assign(slots, 0.0);
  c_.assign(slots, 0.0);
  s_.assign(slots, 0.0);
  b_.assign(2 * slots, 0.0);
  sigma_.assign(2 * slots, 0.0);

  if (coupling > 0.1)
    warnings_.push_back({"regime.rotating_wave", "lambda exceeds 0.1 omega_m; rotating-wave approximation doubtful"});
  c_[slot(0, Branch::plus)] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    const double om = splitting(n);
    for (Branch a : kBranches) {
      const double sa = sign(a);
      energy_[slot(n, a)] = n + 0.5 * (sa * om - detuning);
      // Degenerate om = 0 only when lambda = 0 and on resonance: pick the bare basis.
      if (om > 0.0) {
        c_[slot(n, a)] = sa * std::sqrt(std::max(0.0, (om + sa * detuning) / (2.0 * om)));
        s_[slot(n, a)] = std::sqrt(std::max(0.0, (om - sa * detuning) / (2.0 * om)));
      } else {
        c_[slot(n, a)] = a == Branch::plus ? 1.0 : 0.0;
        s_[slot(n, a)] = a == Branch::plus ? 0.0 : 1.0;
      }
    }
  }
  for (Branch a : kBranches) {
    b_[tslot(1, a, Branch::plus)] = c(1, a);
    sigma_[tslot(1, a, Branch::plus)] = s(1, a);
  }
  for (int n = 2; n <= n_max; ++n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double rn1 = std::sqrt(static_cast<double>(n - 1));
    for (Branch a : kBranches) {
      for (Branch b : kBranches) {
        b_[tslot(n, a, b)] = c(n - 1, b) * c(n, a) * rn + s(n - 1, b) * s(n, a) * rn1;
        sigma_[tslot(n, a, b)] = c(n - 1, b) * s(n, a);
      }
    }
  }
}

double JCLadder::splitting(int n) const {
  return std::sqrt(detuning_ * detuning_ + 4.0 * n * coupling_ * coupling_);
}

int JCLadder::slot(int n, Branch a) const { return 2 * n + idx(a); }
int JCLadder::tslot(int n, Branch a, Branch b) const { return 4 * n + 2 * idx(a) + idx(b); }

JCLadder jc_eigensystem(const SystemParams& params, int n_max) {
  return JCLadder(params.detuning, params.tls_coupling, n_max);
}

}  // namespace tlsom
