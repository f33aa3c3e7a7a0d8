#pragma once

// Simultaneous solution of A x = b and A^T t = c from one process:
// BiLQR (biorthogonalization: BiLQ + QMR) and TriLQR (orthogonal
// tridiagonalization: USYMLQ + USYMQR), plus the single-system halves of
// the latter.

#include <span>

#include "krylov/biorth.hpp"
#include "krylov/engine.hpp"
#include "krylov/solution.hpp"
#include "krylov/ssy.hpp"

namespace krylov {

template <Real T>
DualSolution<T> bilqr_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                            const StoppingRule<T>& rule, bool transfer_to_bicg = false,
                            const Monitoring<T>& mon = {}) {
  const auto cfg = detail::make_config(true, true, transfer_to_bicg ? PrimalPoint::transfer : PrimalPoint::lq,
                                       rule, mon);
  return detail::joint_solution(run_engine<T, BiorthProcess<T>>(op, b, c, cfg));
}

template <Real T>
DualSolution<T> trilqr_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                             const StoppingRule<T>& rule, bool transfer_to_cg = false,
                             const Monitoring<T>& mon = {}) {
  const auto cfg = detail::make_config(true, true, transfer_to_cg ? PrimalPoint::transfer : PrimalPoint::lq,
                                       rule, mon);
  return detail::joint_solution(run_engine<T, SsyProcess<T>>(op, b, c, cfg));
}

/// USYMLQ for A x = b; c only seeds the second basis (c = b when empty).
template <Real T>
Solution<T> usymlq_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                         const StoppingRule<T>& rule, bool transfer_to_cg = false, const Monitoring<T>& mon = {}) {
  if (c.empty()) c = b;
  const auto cfg = detail::make_config(true, false, transfer_to_cg ? PrimalPoint::transfer : PrimalPoint::lq,
                                       rule, mon);
  return detail::primal_solution(run_engine<T, SsyProcess<T>>(op, b, c, cfg));
}

/// USYMQR for A^T t = c; b only seeds the second basis.
template <Real T>
Solution<T> usymqr_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                         const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  const auto cfg = detail::make_config(false, true, PrimalPoint::lq, rule, mon);
  return detail::dual_solution(run_engine<T, SsyProcess<T>>(op, b, c, cfg));
}

/// USYMQR for A x = b (c = b when empty), via the process on A^T.
template <Real T>
Solution<T> usymqr_primal_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                                const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  if (c.empty()) c = b;
  Monitoring<T> swapped{mon.t_exact, mon.x_exact, detail::swap_roles(mon.observer)};
  return usymqr_solve<T>(op.transposed(), c, b, rule, swapped);
}

}  // namespace krylov
