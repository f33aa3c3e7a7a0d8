#pragma once

#include <span>

#include "krylov/biorth.hpp"
#include "krylov/engine.hpp"
#include "krylov/solution.hpp"

namespace krylov {

/// QMR for A^T t = c driven by the biorthogonalization of (A, b, c).
template <Real T>
Solution<T> qmr_dual_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                           const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  const auto cfg = detail::make_config(false, true, PrimalPoint::lq, rule, mon);
  return detail::dual_solution(run_engine<T, BiorthProcess<T>>(op, b, c, cfg));
}

/// QMR for A x = b with shadow vector c (c = b when empty): the dual
/// recurrences applied to the process on A^T with seeds (c, b).
template <Real T>
Solution<T> qmr_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                      const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  if (c.empty()) c = b;
  Monitoring<T> swapped{mon.t_exact, mon.x_exact, detail::swap_roles(mon.observer)};
  return qmr_dual_solve<T>(op.transposed(), c, b, rule, swapped);
}

}  // namespace krylov
