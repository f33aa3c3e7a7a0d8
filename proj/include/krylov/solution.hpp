#pragma once

#include <span>
#include <string>
#include <vector>

#include "krylov/convergence.hpp"
#include "krylov/engine.hpp"

namespace krylov {

/// Optional instrumentation shared by all solver entry points.
template <Real T>
struct Monitoring {
  std::span<const T> x_exact;
  std::span<const T> t_exact;
  IterationObserver<T> observer;
};

template <Real T>
struct Solution {
  std::vector<T> x;
  History<T> history;
  Status status = Status::running;
  int iterations = 0;
  bool galerkin = false;
  std::string message;
};

template <Real T>
struct DualSolution {
  std::vector<T> x;
  std::vector<T> t;
  History<T> primal_history;
  History<T> dual_history;
  Status primal_status = Status::running;
  Status dual_status = Status::running;
  int iterations = 0;
  bool galerkin = false;
  std::string message;
  /// Residual norm of the stacked system, for solvers that work on it.
  std::vector<T> aggregate_rnorm;
};

namespace detail {

template <Real T>
EngineConfig<T> make_config(bool primal, bool dual, PrimalPoint point, const StoppingRule<T>& rule,
                            const Monitoring<T>& mon) {
  EngineConfig<T> cfg;
  cfg.primal = primal;
  cfg.dual = dual;
  cfg.point = point;
  cfg.rule = rule;
  cfg.x_exact = mon.x_exact;
  cfg.t_exact = mon.t_exact;
  cfg.observer = mon.observer;
  return cfg;
}

template <Real T>
Solution<T> primal_solution(EngineResult<T>&& r) {
  return {std::move(r.x), std::move(r.primal_history), r.primal_status, r.iterations, r.galerkin, std::move(r.message)};
}

template <Real T>
Solution<T> dual_solution(EngineResult<T>&& r) {
  return {std::move(r.t), std::move(r.dual_history), r.dual_status, r.iterations, false, std::move(r.message)};
}

template <Real T>
DualSolution<T> joint_solution(EngineResult<T>&& r) {
  DualSolution<T> s;
  s.x = std::move(r.x);
  s.t = std::move(r.t);
  s.primal_history = std::move(r.primal_history);
  s.dual_history = std::move(r.dual_history);
  s.primal_status = r.primal_status;
  s.dual_status = r.dual_status;
  s.iterations = r.iterations;
  s.galerkin = r.galerkin;
  s.message = std::move(r.message);
  return s;
}

/// Observer for runs where the engine's dual half carries the caller's
/// primal system.
template <Real T>
IterationObserver<T> swap_roles(const IterationObserver<T>& obs) {
  if (!obs) return {};
  return [obs](const ConvergenceRecord<T>* p, const ConvergenceRecord<T>* d) { obs(d, p); };
}

}  // namespace detail
}  // namespace krylov
