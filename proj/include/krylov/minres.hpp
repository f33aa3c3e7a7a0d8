#pragma once

// MINRES on the symmetric augmented system
//   [0   A] [t]   [b]
//   [A^T 0] [x] = [c].

#include <span>
#include <vector>

#include "krylov/convergence.hpp"
#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/process.hpp"
#include "krylov/rotations.hpp"
#include "krylov/solution.hpp"

namespace krylov {

/// Stacked unknown (t; x) of the augmented system.
template <Real T>
struct AugmentedVector {
  std::vector<T> t_part;
  std::vector<T> x_part;

  static AugmentedVector split(std::span<const T> z) {
    const std::size_t n = z.size() / 2;
    return {std::vector<T>(z.begin(), z.begin() + n), std::vector<T>(z.begin() + n, z.end())};
  }
};

/// Stops when both ||b - A x|| and ||c - A^T t|| meet their thresholds;
/// both are computed explicitly every iteration.
template <Real T>
DualSolution<T> minres_augmented_solve(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                                       const StoppingRule<T>& rule, const Monitoring<T>& mon = {}) {
  rule.validate();
  if (!op.square() || op.n_rows() != b.size() || c.size() != b.size())
    throw InvalidArgument("operator and right-hand sides have inconsistent sizes");
  const std::size_t n = b.size();
  const LinearOperator<T> K = augmented_operator(op);
  const T bnorm = nrm2<T>(b), cnorm = nrm2<T>(c);
  if (bnorm == T(0) && cnorm == T(0)) throw InvalidArgument("both right-hand sides are zero");
  const T thr_p = rule.threshold(bnorm), thr_d = rule.threshold(cnorm);

  std::vector<T> rhs(2 * n);
  std::copy(b.begin(), b.end(), rhs.begin() + 0);
  std::copy(c.begin(), c.end(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
  // Layout matches K: first block pairs with b (holds t), second with c (holds x).
  std::vector<T> z(2 * n, T(0)), r1 = rhs, r2 = rhs, y = rhs, v(2 * n), w(2 * n, T(0)), w1(2 * n), w2(2 * n, T(0));
  std::vector<T> kz(2 * n);

  T beta = nrm2<T>(rhs), oldb = T(0), dbar = T(0), epsln = T(0), phibar = beta;
  GivensReflection<T> refl;  // c = -1, s = 0
  DualSolution<T> out;
  out.primal_status = out.dual_status = Status::running;

  const auto record = [&](int k) {
    K.apply(z, kz);
    std::vector<T> rb(kz.begin(), kz.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<T> rc(kz.begin() + static_cast<std::ptrdiff_t>(n), kz.end());
    axpby<T>(T(1), b, T(-1), rb);
    axpby<T>(T(1), c, T(-1), rc);
    ConvergenceRecord<T> p, d;
    p.iteration = d.iteration = k;
    p.rnorm = nrm2<T>(rb);
    d.rnorm = nrm2<T>(rc);
    p.explicit_rnorm = p.rnorm;
    d.explicit_rnorm = d.rnorm;
    const std::span<const T> zs(z);
    if (!mon.x_exact.empty()) p.enorm = detail::distance<T>(zs.subspan(n, n), mon.x_exact);
    if (!mon.t_exact.empty()) d.enorm = detail::distance<T>(zs.subspan(0, n), mon.t_exact);
    const bool ok = p.rnorm <= thr_p && d.rnorm <= thr_d;
    if (ok) p.status = d.status = Status::converged;
    if (!isfinite(p.rnorm) || !isfinite(d.rnorm)) p.status = d.status = Status::breakdown;
    out.primal_history.push_back(p);
    out.dual_history.push_back(d);
    out.aggregate_rnorm.push_back(phibar);
    if (mon.observer) mon.observer(&out.primal_history.back(), &out.dual_history.back());
    return p.status;
  };

  Status status = Status::running;
  for (int k = 1; k <= rule.max_iterations; ++k) {
    out.iterations = k;
    v = y;
    scal<T>(T(1) / beta, v);
    K.apply(v, y);
    if (k >= 2) axpy<T>(-beta / oldb, r1, y);
    const T alpha = dot<T>(v, y);
    axpy<T>(-alpha / beta, r2, y);
    r1.swap(r2);
    r2 = y;
    oldb = beta;
    beta = nrm2<T>(r2);

    const T oldeps = epsln;
    const T delta = refl.c * dbar + refl.s * alpha;
    const T gbar = refl.s * dbar - refl.c * alpha;
    epsln = refl.s * beta;
    dbar = -refl.c * beta;
    const auto [next, gamma] = sym_ortho(gbar, beta);
    if (gamma == T(0)) {
      status = Status::breakdown;
      out.message = "singular projected matrix at iteration " + std::to_string(k);
      break;
    }
    refl = next;
    const T phi = refl.c * phibar;
    phibar = refl.s * phibar;

    w1.swap(w2);
    w2.swap(w);
    w = v;
    axpy<T>(-oldeps, w1, w);
    axpy<T>(-delta, w2, w);
    scal<T>(T(1) / gamma, w);
    axpy<T>(phi, w, z);

    status = record(k);
    if (status != Status::running) break;
    if (beta <= breakdown_tolerance<T>() * oldb) {
      status = Status::breakdown;
      out.message = "invariant subspace reached before convergence";
      break;
    }
  }
  if (status == Status::running) status = Status::max_iterations;
  if (!out.primal_history.empty()) {
    out.primal_history.back().status = status;
    out.dual_history.back().status = status;
  }
  out.primal_status = out.dual_status = status;
  auto parts = AugmentedVector<T>::split(z);
  out.t = std::move(parts.t_part);
  out.x = std::move(parts.x_part);
  return out;
}

}  // namespace krylov
