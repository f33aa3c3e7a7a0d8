#pragma once

// Lanczos biorthogonalization: bases V_k, U_k with V_k^T U_k = I and
//   A V_k   = V_{k+1} T_{k+1,k},
//   A^T U_k = U_{k+1} T_{k,k+1}^T.

#include <span>
#include <utility>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/process.hpp"

namespace krylov {

template <Real T>
using BiorthState = ProcessState<T>;

template <Real T>
struct BiorthInit {
  BiorthState<T> state;
  T beta1;
  T gamma1;
};

namespace detail {

/// Splits the scaling of (q, p) so that the normalized pair satisfies
/// v^T u = 1: beta = sqrt(|q^T p|) > 0 and gamma = q^T p / beta.
template <Real T>
std::pair<T, T> biorth_scaling(T qp) {
  const T beta = sqrt(abs(qp));
  return {beta, qp / beta};
}

}  // namespace detail

/// beta1 v1 = b, gamma1 u1 = c with v1^T u1 = 1.
///
/// Throws InvalidArgument for zero or mismatched seeds and
/// InitializationBreakdown when b^T c = 0.
template <Real T>
BiorthInit<T> biorth_init(std::span<const T> b, std::span<const T> c) {
  if (b.size() != c.size()) throw InvalidArgument("seed vectors differ in length");
  const T bn = nrm2<T>(b);
  const T cn = nrm2<T>(c);
  if (bn == T(0) || cn == T(0)) throw InvalidArgument("seed vectors must be nonzero");
  const T bc = dot<T>(b, c);
  if (abs(bc) <= epsilon<T>() * bn * cn)
    throw InitializationBreakdown("b^T c = 0: biorthogonalization cannot start");
  const auto [beta1, gamma1] = detail::biorth_scaling(bc);
  const std::size_t n = b.size();
  BiorthState<T> s;
  s.v_prev.assign(n, T(0));
  s.u_prev.assign(n, T(0));
  s.v_curr.assign(b.begin(), b.end());
  s.u_curr.assign(c.begin(), c.end());
  scal<T>(T(1) / beta1, s.v_curr);
  scal<T>(T(1) / gamma1, s.u_curr);
  s.beta_curr = beta1;
  s.gamma_curr = gamma1;
  s.metrics.v_next_norm_sq = dot<T>(s.v_curr, s.v_curr);
  s.metrics.u_next_norm_sq = dot<T>(s.u_curr, s.u_curr);
  return {std::move(s), beta1, gamma1};
}

/// One step of the biorthogonalization: produces alpha_k, beta_{k+1},
/// gamma_{k+1} and rotates the state so v_prev = v_k, v_curr = v_{k+1}.
///
/// On a lucky breakdown the vanished vector is stored as zero with a zero
/// coefficient. On a serious breakdown the state is left untouched apart
/// from alpha_k being reported.
template <Real T>
StepResult<T> biorth_step(const LinearOperator<T>& op, BiorthState<T>& s) {
  const std::size_t n = s.v_curr.size();
  if (!op.square() || op.n_rows() != n) throw InvalidArgument("operator does not match the process");
  std::vector<T> q(n), p(n);
  op.apply(s.v_curr, q);
  axpy<T>(-s.gamma_curr, s.v_prev, q);
  op.apply_adjoint(s.u_curr, p);
  axpy<T>(-s.beta_curr, s.u_prev, p);
  const T alpha = dot<T>(s.u_curr, q);
  const T q_scale = nrm2<T>(q);
  const T p_scale = nrm2<T>(p);
  const T v_norm = sqrt(s.metrics.v_next_norm_sq);
  const T u_norm = sqrt(s.metrics.u_next_norm_sq);
  axpy<T>(-alpha, s.v_curr, q);
  axpy<T>(-alpha, s.u_curr, p);
  const T qn = nrm2<T>(q);
  const T pn = nrm2<T>(p);

  StepResult<T> r;
  r.coeffs.alpha = alpha;
  r.q_norm = qn;
  r.p_norm = pn;
  const T tol = breakdown_tolerance<T>();
  const bool q_zero = qn <= tol * std::max(q_scale, abs(alpha) * v_norm);
  const bool p_zero = pn <= tol * std::max(p_scale, abs(alpha) * u_norm);

  T beta = T(0), gamma = T(0);
  if (q_zero || p_zero) {
    r.status = q_zero && p_zero ? StepStatus::invariant_both
               : q_zero         ? StepStatus::invariant_v
                                : StepStatus::invariant_u;
    if (!q_zero) beta = qn;
    if (!p_zero) gamma = pn;
  } else {
    const T qp = dot<T>(q, p);
    if (abs(qp) <= epsilon<T>() * qn * pn) {
      r.status = StepStatus::serious;
      return r;
    }
    std::tie(beta, gamma) = detail::biorth_scaling(qp);
  }
  r.coeffs.beta_next = beta;
  r.coeffs.gamma_next = gamma;

  BasisMetrics<T> m;
  m.v_norm_sq = s.metrics.v_next_norm_sq;
  if (beta != T(0)) {
    m.v_dot_v_next = dot<T>(s.v_curr, q) / beta;
    scal<T>(T(1) / beta, q);
    m.v_next_norm_sq = (qn / beta) * (qn / beta);
  } else {
    std::fill(q.begin(), q.end(), T(0));
    m.v_dot_v_next = T(0);
    m.v_next_norm_sq = T(0);
  }
  if (gamma != T(0)) {
    scal<T>(T(1) / gamma, p);
    m.u_next_norm_sq = (pn / gamma) * (pn / gamma);
  } else {
    std::fill(p.begin(), p.end(), T(0));
    m.u_next_norm_sq = T(0);
  }
  s.v_prev = std::move(s.v_curr);
  s.v_curr = std::move(q);
  s.u_prev = std::move(s.u_curr);
  s.u_curr = std::move(p);
  s.beta_curr = beta;
  s.gamma_curr = gamma;
  s.metrics = m;
  ++s.k;
  return r;
}

/// Adapter used by the solver engine.
template <Real T>
class BiorthProcess {
 public:
  static constexpr bool orthonormal = false;

  std::pair<T, T> init(std::span<const T> b, std::span<const T> c) {
    auto i = biorth_init<T>(b, c);
    state_ = std::move(i.state);
    return {i.beta1, i.gamma1};
  }

  StepResult<T> step(const LinearOperator<T>& op) { return biorth_step(op, state_); }

  /// Column feeding the primal direction recurrence at step k (v_k).
  std::span<const T> primal_column() const { return state_.v_prev; }
  /// Column feeding the dual direction recurrence at step k (u_k).
  std::span<const T> dual_column() const { return state_.u_prev; }
  /// Same columns before the first step (v_1, u_1).
  std::span<const T> primal_seed() const { return state_.v_curr; }
  std::span<const T> dual_seed() const { return state_.u_curr; }

  const BasisMetrics<T>& metrics() const { return state_.metrics; }
  const BiorthState<T>& state() const { return state_; }

 private:
  BiorthState<T> state_;
};

}  // namespace krylov
