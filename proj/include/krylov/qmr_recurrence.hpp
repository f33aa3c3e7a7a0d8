#pragma once

// QR factorization of T_{k-1,k}^T obtained from the same reflections as
// the LQ factorization, with W_k = U_k L_k^{-T}. At iteration k the
// state holds t_{k-1}.

#include <span>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/rotations.hpp"

namespace krylov {

template <Real T>
struct QmrState {
  T psi_bar{0};            ///< psi-bar_k
  std::vector<T> w_prev2;  ///< w_{k-2}
  std::vector<T> w_prev;   ///< w_{k-1}
  std::vector<T> t;        ///< t_{k-1}
  /// u_k - lambda_{k-1} w_{k-1} - epsilon_{k-2} w_{k-2}; becomes
  /// delta_k w_k once delta_k is known.
  std::vector<T> pending;
  T tau{0};  ///< sum of ||u_i||^2, i <= k
};

/// psi-bar_1 = gamma_1, pending = u_1, tau_1 = ||u_1||^2.
template <Real T>
QmrState<T> qmr_start(T gamma1, std::span<const T> u1, T u1_norm_sq) {
  const std::size_t n = u1.size();
  QmrState<T> s;
  s.psi_bar = gamma1;
  s.w_prev2.assign(n, T(0));
  s.w_prev.assign(n, T(0));
  s.t.assign(n, T(0));
  s.pending.assign(u1.begin(), u1.end());
  s.tau = u1_norm_sq;
  return s;
}

/// Applies reflection r (acting on psi-bar) and the diagonal entry delta
/// of the triangular factor: w = pending / delta, psi = c psi-bar,
/// psi-bar <- s psi-bar, t += psi w.
template <Real T>
void qmr_advance(QmrState<T>& s, const GivensReflection<T>& r, T delta) {
  if (delta == T(0)) throw Stagnation("singular R factor (delta = 0)");
  std::swap(s.w_prev2, s.w_prev);
  s.w_prev.swap(s.pending);
  scal<T>(T(1) / delta, s.w_prev);
  const T psi = r.c * s.psi_bar;
  s.psi_bar = r.s * s.psi_bar;
  axpy<T>(psi, s.w_prev, s.t);
}

/// pending = u_k - lambda_{k-1} w_{k-1} - epsilon_{k-2} w_{k-2}.
template <Real T>
void qmr_prepare(QmrState<T>& s, std::span<const T> u_k, T lambda, T eps) {
  s.pending.assign(u_k.begin(), u_k.end());
  axpy<T>(-lambda, s.w_prev, s.pending);
  axpy<T>(-eps, s.w_prev2, s.pending);
}

/// |psi-bar| sqrt(tau): bounds ||c - A^T t|| given tau includes the
/// newest basis column.
template <Real T>
T qmr_residual_bound(const QmrState<T>& s) {
  return abs(s.psi_bar) * sqrt(s.tau);
}

}  // namespace krylov
