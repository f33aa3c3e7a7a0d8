#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "krylov/scalar.hpp"

namespace krylov {

/// Scalars produced by one step k of a two-sided tridiagonalization:
/// alpha_k on the diagonal, beta_{k+1} below it, gamma_{k+1} above it.
template <Real T>
struct TridiagCoeffs {
  T alpha{0};
  T beta_next{0};
  T gamma_next{0};
};

enum class StepStatus {
  ok,
  /// The next v vanished: A V_k = V_k T_k (or A U_k = V_k T_k).
  invariant_v,
  /// The next u vanished.
  invariant_u,
  invariant_both,
  /// q^T p = 0 with both vectors nonzero (biorthogonalization only).
  serious,
};

inline bool is_lucky(StepStatus s) {
  return s == StepStatus::invariant_v || s == StepStatus::invariant_u ||
         s == StepStatus::invariant_both;
}

inline bool v_vanished(StepStatus s) {
  return s == StepStatus::invariant_v || s == StepStatus::invariant_both;
}

inline bool u_vanished(StepStatus s) {
  return s == StepStatus::invariant_u || s == StepStatus::invariant_both;
}

template <Real T>
struct StepResult {
  TridiagCoeffs<T> coeffs;
  StepStatus status = StepStatus::ok;
  T q_norm{0};  ///< norm of the unnormalized next v
  T p_norm{0};  ///< norm of the unnormalized next u
};

/// Norm information on the bases needed by the residual estimates at the
/// end of step k: ||v_k||^2, ||v_{k+1}||^2, v_k^T v_{k+1}, ||u_{k+1}||^2.
template <Real T>
struct BasisMetrics {
  T v_norm_sq{1};
  T v_next_norm_sq{1};
  T v_dot_v_next{0};
  T u_next_norm_sq{1};
};

/// Two trailing columns of each basis. After step k, v_prev = v_k and
/// v_curr = v_{k+1} (likewise for u); beta_curr = beta_{k+1},
/// gamma_curr = gamma_{k+1}.
template <Real T>
struct ProcessState {
  std::vector<T> v_prev, v_curr;
  std::vector<T> u_prev, u_curr;
  T beta_curr{0};
  T gamma_curr{0};
  int k = 0;
  BasisMetrics<T> metrics;
};

/// Relative cancellation below which a freshly orthogonalized vector is
/// treated as zero (invariant subspace reached).
template <Real T>
T breakdown_tolerance() {
  return pow(epsilon<T>(), T(0.75));
}

}  // namespace krylov
