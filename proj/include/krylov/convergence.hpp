#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/scalar.hpp"

namespace krylov {

enum class Status { running, converged, breakdown, max_iterations };

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::running: return "running";
    case Status::converged: return "converged";
    case Status::breakdown: return "breakdown";
    case Status::max_iterations: return "max-iterations";
  }
  return "?";
}

template <Real T>
struct StoppingRule {
  T atol = T(1e-10);
  T rtol = T(1e-7);
  int max_iterations = 10000;
  /// d in the error lower bound ||z_{k-d} - z_{k-1}||; 0 disables it.
  int error_delay = 0;
  /// Decide convergence on b - A x computed every iteration instead of
  /// the recurrence estimates.
  bool explicit_residuals = false;
  /// Period (in iterations) of the explicit residual recorded alongside
  /// the estimates; 0 disables it.
  int monitor_every = 20;
  /// Keep updating both iterates until both tests hold at the same
  /// iteration instead of freezing the system that converged first.
  bool run_to_completion = false;

  void validate() const {
    if (!(atol >= T(0)) || !(rtol >= T(0))) throw InvalidArgument("tolerances must be nonnegative");
    if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
    if (error_delay < 0 || monitor_every < 0) throw InvalidArgument("negative delay or monitor period");
  }

  T threshold(T rhs_norm) const { return atol + rtol * rhs_norm; }
};

/// One row of a convergence history.
template <Real T>
struct ConvergenceRecord {
  int iteration = 0;
  /// Residual norm of the reported iterate: recurrence estimate, upper
  /// bound, or explicit value when explicit residuals are requested.
  T rnorm{0};
  /// Minimum-norm (LQ) point estimate; primal histories only.
  std::optional<T> rnorm_lq;
  /// Galerkin point estimate when that point exists; primal only.
  std::optional<T> rnorm_cg;
  std::optional<T> explicit_rnorm;
  std::optional<T> enorm;
  /// ||z_{k-d} - z_{k-1}||; primal only, when error_delay > 0.
  std::optional<T> error_lower_bound;
  /// ||z_{k-1}||; primal only.
  std::optional<T> znorm;
  /// Set when a negative radicand was clamped to zero.
  bool clamped = false;
  /// The Galerkin point is the reported iterate.
  bool galerkin = false;
  Status status = Status::running;
};

template <Real T>
using History = std::vector<ConvergenceRecord<T>>;

}  // namespace krylov
