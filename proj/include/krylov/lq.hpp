#pragma once

// LQ factorization T_k = Lbar_k Q_k of the projected tridiagonal matrix,
// the forward substitution Lbar_k zbar_k = beta_1 e_1 and the direction
// recurrence Dbar_k = V_k Q_k^T, all updated one column at a time.

#include <optional>
#include <span>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/process.hpp"
#include "krylov/rotations.hpp"

namespace krylov {

template <Real T>
struct LqState {
  int k = 0;
  T delta_bar{0};    ///< delta-bar_k
  T delta{0};        ///< delta_{k-1}
  T eps_prev{0};     ///< epsilon_{k-2}
  T lambda_prev{0};  ///< lambda_{k-1}
  GivensReflection<T> refl_prev;  ///< (c_{k-1}, s_{k-1})
  GivensReflection<T> refl_curr;  ///< (c_k, s_k)
  T eta{0};          ///< eta_k
  T zeta_prev{0};    ///< zeta_{k-1}
  T zeta_prev2{0};   ///< zeta_{k-2}
  std::optional<T> zeta_bar;  ///< eta_k / delta-bar_k when delta-bar_k != 0
  T znorm_sq{0};     ///< ||z_{k-1}||^2
};

/// State after the first process step: delta-bar_1 = alpha_1,
/// c_1 = -1, s_1 = 0, eta_1 = beta_1.
template <Real T>
LqState<T> lq_start(T alpha1, T beta1) {
  LqState<T> s;
  s.k = 1;
  s.delta_bar = alpha1;
  s.eta = beta1;
  if (s.delta_bar != T(0)) s.zeta_bar = s.eta / s.delta_bar;
  return s;
}

/// Absorbs column k of T_k (alpha_k, with beta_k and gamma_k from the
/// previous step) into the factorization.
template <Real T>
void lq_advance(LqState<T>& s, T alpha_k, T beta_k, T gamma_k) {
  const auto [refl, delta] = sym_ortho(s.delta_bar, gamma_k);
  s.refl_prev = s.refl_curr;
  s.refl_curr = refl;
  s.delta = delta;
  s.eps_prev = s.refl_prev.s * beta_k;
  s.lambda_prev = -s.refl_prev.c * refl.c * beta_k + refl.s * alpha_k;
  s.delta_bar = -s.refl_prev.c * refl.s * beta_k - refl.c * alpha_k;
  ++s.k;
}

/// zeta_{k-1} = eta_{k-1} / delta_{k-1}, eta_k, and zeta-bar_k when
/// delta-bar_k != 0. Call once after each lq_advance.
template <Real T>
void z_advance(LqState<T>& s) {
  if (s.delta == T(0)) throw Stagnation("singular LQ factor (delta = 0)");
  const T zeta = s.eta / s.delta;
  s.zeta_prev2 = s.zeta_prev;
  s.zeta_prev = zeta;
  s.znorm_sq += zeta * zeta;
  s.eta = -s.eps_prev * s.zeta_prev2 - s.lambda_prev * s.zeta_prev;
  if (s.delta_bar != T(0))
    s.zeta_bar = s.eta / s.delta_bar;
  else
    s.zeta_bar.reset();
}

/// Minimum-norm point x^L_k and the last direction dbar_k.
template <Real T>
struct DirectionState {
  std::vector<T> d_bar;
  std::vector<T> x;
};

/// dbar_1 = first basis column, x = 0.
template <Real T>
DirectionState<T> direction_start(std::span<const T> col1) {
  return {std::vector<T>(col1.begin(), col1.end()), std::vector<T>(col1.size(), T(0))};
}

/// d_{k-1} = c_k dbar_{k-1} + s_k col_k, dbar_k = s_k dbar_{k-1} - c_k col_k,
/// x += zeta_{k-1} d_{k-1}. `work` receives d_{k-1}.
template <Real T>
void direction_advance(DirectionState<T>& ds, const GivensReflection<T>& r, std::span<const T> col_k,
                       T zeta, std::vector<T>& work) {
  work.assign(col_k.begin(), col_k.end());
  axpby<T>(r.c, ds.d_bar, r.s, work);
  axpby<T>(-r.c, col_k, r.s, ds.d_bar);
  axpy<T>(zeta, work, ds.x);
}

template <Real T>
struct LqResiduals {
  T rnorm_lq{0};
  std::optional<T> rnorm_cg;
  bool clamped = false;
};

/// Residual norms of x^L_k and (when defined) x^C_k from the recurrence
/// scalars. alpha_k, beta_k, beta_{k+1} are the coefficients of step k;
/// the metrics describe v_k and v_{k+1}.
template <Real T>
LqResiduals<T> bilq_residual_estimates(const LqState<T>& s, T alpha_k, T beta_k, T beta_next,
                                       const BasisMetrics<T>& m) {
  LqResiduals<T> r;
  const GivensReflection<T>& cp = s.refl_prev;
  const GivensReflection<T>& cc = s.refl_curr;
  if (s.k == 1) {
    r.rnorm_lq = abs(s.eta) * sqrt(m.v_norm_sq);
  } else {
    const T mu = beta_k * (cp.s * s.zeta_prev2 - cp.c * cc.c * s.zeta_prev) + alpha_k * cc.s * s.zeta_prev;
    const T omega = beta_next * cc.s * s.zeta_prev;
    T rad = mu * mu * m.v_norm_sq + omega * omega * m.v_next_norm_sq + T(2) * mu * omega * m.v_dot_v_next;
    if (rad < T(0)) {
      rad = T(0);
      r.clamped = true;
    }
    r.rnorm_lq = sqrt(rad);
  }
  if (s.zeta_bar) {
    const T rho = beta_next * (cc.s * s.zeta_prev - cc.c * *s.zeta_bar);
    r.rnorm_cg = abs(rho) * sqrt(m.v_next_norm_sq);
  }
  return r;
}

/// x^C_k = x^L_k + zeta-bar_k dbar_k.
template <Real T>
std::vector<T> bicg_transfer(std::span<const T> x_lq, std::optional<T> zeta_bar, std::span<const T> d_bar) {
  if (!zeta_bar) throw UndefinedPoint("Galerkin point undefined: delta-bar_k = 0");
  std::vector<T> x(x_lq.begin(), x_lq.end());
  axpy<T>(*zeta_bar, d_bar, x);
  return x;
}

}  // namespace krylov
