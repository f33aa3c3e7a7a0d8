#pragma once

// Saunders-Simon-Yip orthogonal tridiagonalization: orthonormal bases
// V_k, U_k with
//   A U_k   = V_{k+1} T_{k+1,k},
//   A^T V_k = U_{k+1} T_{k,k+1}^T.
// Square operators only.

#include <span>
#include <utility>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/process.hpp"

namespace krylov {

template <Real T>
using SsyState = ProcessState<T>;

template <Real T>
struct SsyInit {
  SsyState<T> state;
  T beta1;
  T gamma1;
};

/// beta1 = ||b||, gamma1 = ||c||. Throws InvalidArgument for zero seeds.
template <Real T>
SsyInit<T> ssy_init(std::span<const T> b, std::span<const T> c) {
  if (b.size() != c.size()) throw InvalidArgument("seed vectors differ in length");
  const T beta1 = nrm2<T>(b);
  const T gamma1 = nrm2<T>(c);
  if (beta1 == T(0) || gamma1 == T(0)) throw InvalidArgument("seed vectors must be nonzero");
  const std::size_t n = b.size();
  SsyState<T> s;
  s.v_prev.assign(n, T(0));
  s.u_prev.assign(n, T(0));
  s.v_curr.assign(b.begin(), b.end());
  s.u_curr.assign(c.begin(), c.end());
  scal<T>(T(1) / beta1, s.v_curr);
  scal<T>(T(1) / gamma1, s.u_curr);
  s.beta_curr = beta1;
  s.gamma_curr = gamma1;
  s.metrics = BasisMetrics<T>{};
  return {std::move(s), beta1, gamma1};
}

template <Real T>
StepResult<T> ssy_step(const LinearOperator<T>& op, SsyState<T>& s) {
  const std::size_t n = s.v_curr.size();
  if (!op.square() || op.n_rows() != n) throw InvalidArgument("operator does not match the process");
  std::vector<T> q(n), p(n);
  op.apply(s.u_curr, q);
  axpy<T>(-s.gamma_curr, s.v_prev, q);
  op.apply_adjoint(s.v_curr, p);
  axpy<T>(-s.beta_curr, s.u_prev, p);
  const T alpha = dot<T>(s.v_curr, q);
  const T q_scale = nrm2<T>(q);
  const T p_scale = nrm2<T>(p);
  axpy<T>(-alpha, s.v_curr, q);
  axpy<T>(-alpha, s.u_curr, p);
  const T qn = nrm2<T>(q);
  const T pn = nrm2<T>(p);

  StepResult<T> r;
  r.coeffs.alpha = alpha;
  r.q_norm = qn;
  r.p_norm = pn;
  const T tol = breakdown_tolerance<T>();
  const bool q_zero = qn <= tol * std::max(q_scale, abs(alpha));
  const bool p_zero = pn <= tol * std::max(p_scale, abs(alpha));
  r.status = q_zero && p_zero ? StepStatus::invariant_both
             : q_zero         ? StepStatus::invariant_v
             : p_zero         ? StepStatus::invariant_u
                              : StepStatus::ok;
  const T beta = q_zero ? T(0) : qn;
  const T gamma = p_zero ? T(0) : pn;
  r.coeffs.beta_next = beta;
  r.coeffs.gamma_next = gamma;

  if (beta != T(0))
    scal<T>(T(1) / beta, q);
  else
    std::fill(q.begin(), q.end(), T(0));
  if (gamma != T(0))
    scal<T>(T(1) / gamma, p);
  else
    std::fill(p.begin(), p.end(), T(0));

  BasisMetrics<T> m;
  m.v_norm_sq = T(1);
  m.v_next_norm_sq = beta != T(0) ? T(1) : T(0);
  m.v_dot_v_next = T(0);
  m.u_next_norm_sq = gamma != T(0) ? T(1) : T(0);
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

template <Real T>
class SsyProcess {
 public:
  static constexpr bool orthonormal = true;

  std::pair<T, T> init(std::span<const T> b, std::span<const T> c) {
    auto i = ssy_init<T>(b, c);
    state_ = std::move(i.state);
    return {i.beta1, i.gamma1};
  }

  StepResult<T> step(const LinearOperator<T>& op) { return ssy_step(op, state_); }

  /// Primal iterates live in span(U), dual iterates in span(V).
  std::span<const T> primal_column() const { return state_.u_prev; }
  std::span<const T> dual_column() const { return state_.v_prev; }
  std::span<const T> primal_seed() const { return state_.u_curr; }
  std::span<const T> dual_seed() const { return state_.v_curr; }

  const BasisMetrics<T>& metrics() const { return state_.metrics; }
  const SsyState<T>& state() const { return state_; }

 private:
  SsyState<T> state_;
};

}  // namespace krylov
