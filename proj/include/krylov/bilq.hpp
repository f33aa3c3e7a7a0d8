#pragma once

#include <span>

#include "krylov/biorth.hpp"
#include "krylov/engine.hpp"
#include "krylov/solution.hpp"

namespace krylov {

/// BiLQ for A x = b with shadow vector c (c = b when empty). With
/// `transfer_to_bicg`, the BiCG point is tested and returned whenever it
/// exists and its residual is no larger.
template <Real T>
Solution<T> bilq_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                       const StoppingRule<T>& rule, bool transfer_to_bicg = false, const Monitoring<T>& mon = {}) {
  if (c.empty()) c = b;
  const auto cfg = detail::make_config(true, false, transfer_to_bicg ? PrimalPoint::transfer : PrimalPoint::lq,
                                       rule, mon);
  return detail::primal_solution(run_engine<T, BiorthProcess<T>>(op, b, c, cfg));
}

/// BiCG expressed through the BiLQ recurrences: only the Galerkin point is
/// used, and a singular T_k is reported as a breakdown.
template <Real T>
Solution<T> bicg_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                       const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  if (c.empty()) c = b;
  const auto cfg = detail::make_config(true, false, PrimalPoint::cg, rule, mon);
  return detail::primal_solution(run_engine<T, BiorthProcess<T>>(op, b, c, cfg));
}

}  // namespace krylov
