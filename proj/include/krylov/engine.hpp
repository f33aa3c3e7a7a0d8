#pragma once

// Shared driver for the LQ-based primal solver (BiLQ / USYMLQ) and the
// QR-based dual solver (QMR / USYMQR) over one tridiagonalization process.
// Every solver entry point goes through run_engine, so a combined run and
// a single-system run execute the same floating-point operations for the
// system they share.

#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krylov/convergence.hpp"
#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/lq.hpp"
#include "krylov/process.hpp"
#include "krylov/qmr_recurrence.hpp"

namespace krylov {

/// Which primal iterate is tested and returned.
enum class PrimalPoint {
  lq,        ///< minimum-norm point x^L_k
  transfer,  ///< Galerkin point x^C_k whenever it exists and is no worse
  cg,        ///< Galerkin point only; delta-bar_k = 0 is a breakdown
};

template <Real T>
using IterationObserver = std::function<void(const ConvergenceRecord<T>* primal, const ConvergenceRecord<T>* dual)>;

template <Real T>
struct EngineConfig {
  bool primal = true;
  bool dual = true;
  PrimalPoint point = PrimalPoint::lq;
  StoppingRule<T> rule;
  std::span<const T> x_exact;
  std::span<const T> t_exact;
  IterationObserver<T> observer;
};

template <Real T>
struct EngineResult {
  std::vector<T> x;
  std::vector<T> t;
  History<T> primal_history;
  History<T> dual_history;
  Status primal_status = Status::running;
  Status dual_status = Status::running;
  int iterations = 0;
  /// x is the Galerkin point.
  bool galerkin = false;
  std::string message;
};

namespace detail {

template <Real T>
T distance(std::span<const T> a, std::span<const T> b) {
  std::vector<T> d(a.begin(), a.end());
  axpy<T>(T(-1), b, d);
  return nrm2<T>(d);
}

template <Real T, class Process>
class Engine {
 public:
  Engine(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c, const EngineConfig<T>& cfg)
      : op_(op), b_(b), c_(c), cfg_(cfg), rule_(cfg.rule) {}

  EngineResult<T> run() {
    rule_.validate();
    const std::size_t n = b_.size();
    if (!op_.square() || op_.n_rows() != n || c_.size() != n)
      throw InvalidArgument("operator and right-hand sides have inconsistent sizes");
    if (!cfg_.primal && !cfg_.dual) throw InvalidArgument("no system selected");
    if (!cfg_.x_exact.empty() && cfg_.x_exact.size() != n) throw InvalidArgument("exact primal solution has wrong size");
    if (!cfg_.t_exact.empty() && cfg_.t_exact.size() != n) throw InvalidArgument("exact dual solution has wrong size");

    const auto [beta1, gamma1] = proc_.init(b_, c_);
    thr_p_ = rule_.threshold(nrm2<T>(b_));
    thr_d_ = rule_.threshold(nrm2<T>(c_));
    p_active_ = cfg_.primal;
    d_active_ = cfg_.dual;
    if (p_active_) ds_ = direction_start<T>(proc_.primal_seed());
    T u_norm_sq = Process::orthonormal ? T(1) : proc_.metrics().u_next_norm_sq;
    if (d_active_) qs_ = qmr_start<T>(gamma1, proc_.dual_seed(), u_norm_sq);
    if (!p_active_) res_.x.assign(n, T(0));
    if (!d_active_) res_.t.assign(n, T(0));

    T beta_k = beta1, gamma_k = gamma1;
    for (int k = 1;; ++k) {
      if (k > rule_.max_iterations) {
        if (p_active_) stop_primal(Status::max_iterations);
        if (d_active_) stop_dual(Status::max_iterations);
        break;
      }
      const StepResult<T> st = proc_.step(op_);
      res_.iterations = k;
      if (st.status == StepStatus::serious) {
        res_.message = "serious breakdown at iteration " + std::to_string(k);
        if (p_active_) {
          push_terminal_copy(res_.primal_history, k, k == 1 ? nrm2<T>(b_) : last_rnorm(res_.primal_history));
          stop_primal(Status::breakdown);
        }
        if (d_active_) {
          push_terminal_copy(res_.dual_history, k, k == 1 ? nrm2<T>(c_) : last_rnorm(res_.dual_history));
          stop_dual(Status::breakdown);
        }
        break;
      }
      const T alpha = st.coeffs.alpha;
      const T beta_next = st.coeffs.beta_next;
      if (k == 1)
        lq_ = lq_start(alpha, beta1);
      else
        lq_advance(lq_, alpha, beta_k, gamma_k);
      const BasisMetrics<T>& m = proc_.metrics();

      std::optional<ConvergenceRecord<T>> prec, drec;
      if (p_active_) prec = primal_iteration(k, alpha, beta_k, beta_next, m);
      if (d_active_) drec = dual_iteration(k, u_norm_sq);

      if (is_lucky(st.status)) {
        // Both Krylov spaces are the whole space once k = n.
        const StepStatus s = static_cast<std::size_t>(k) == n ? StepStatus::invariant_both : st.status;
        finish_lucky(s, prec, drec);
        notify(prec, drec);
        break;
      }

      if (rule_.run_to_completion) {
        const bool stop_now = (!prec || prec->status != Status::running) && (!drec || drec->status != Status::running);
        if (prec && prec->status == Status::converged && !stop_now) prec->status = Status::running;
        if (drec && drec->status == Status::converged && !stop_now) drec->status = Status::running;
      }
      commit(prec, drec);
      notify(prec, drec);
      if (!p_active_ && !d_active_) break;

      beta_k = st.coeffs.beta_next;
      gamma_k = st.coeffs.gamma_next;
      u_norm_sq = m.u_next_norm_sq;
    }
    return std::move(res_);
  }

 private:
  static T last_rnorm(const History<T>& h) { return h.empty() ? T(0) : h.back().rnorm; }

  static void push_terminal_copy(History<T>& h, int k, T rnorm) {
    ConvergenceRecord<T> r = h.empty() ? ConvergenceRecord<T>{} : h.back();
    r.iteration = k;
    r.rnorm = rnorm;
    r.status = Status::breakdown;
    h.push_back(r);
  }

  std::vector<T> primal_point(bool galerkin) const {
    if (galerkin) return bicg_transfer<T>(ds_.x, lq_.zeta_bar, ds_.d_bar);
    return ds_.x;
  }

  T primal_explicit(std::span<const T> x) const {
    std::vector<T> r(x.size());
    op_.apply(x, r);
    axpby<T>(T(1), b_, T(-1), r);
    return nrm2<T>(r);
  }

  T dual_explicit(std::span<const T> t) const {
    std::vector<T> r(t.size());
    op_.apply_adjoint(t, r);
    axpby<T>(T(1), c_, T(-1), r);
    return nrm2<T>(r);
  }

  bool monitor_due(int k) const { return rule_.monitor_every > 0 && k % rule_.monitor_every == 0; }

  /// Fills explicit residual and error fields for iterate `x` and decides
  /// convergence of the record.
  void assess(ConvergenceRecord<T>& rec, std::span<const T> x, bool dual, int k) {
    const T thr = dual ? thr_d_ : thr_p_;
    const std::span<const T> exact = dual ? cfg_.t_exact : cfg_.x_exact;
    auto explicit_norm = [&] { return dual ? dual_explicit(x) : primal_explicit(x); };
    if (rule_.explicit_residuals) {
      rec.explicit_rnorm = explicit_norm();
      rec.rnorm = *rec.explicit_rnorm;
    } else if (monitor_due(k)) {
      rec.explicit_rnorm = explicit_norm();
    }
    if (!exact.empty()) rec.enorm = distance<T>(x, exact);
    if (!isfinite(rec.rnorm)) {
      rec.status = Status::breakdown;
      return;
    }
    if (rec.rnorm <= thr) {
      if (!rec.explicit_rnorm) rec.explicit_rnorm = explicit_norm();
      if (*rec.explicit_rnorm <= thr) rec.status = Status::converged;
    }
  }

  ConvergenceRecord<T> primal_iteration(int k, T alpha, T beta_k, T beta_next, const BasisMetrics<T>& m) {
    ConvergenceRecord<T> rec;
    rec.iteration = k;
    if (k > 1) {
      try {
        z_advance(lq_);
      } catch (const Stagnation& e) {
        res_.message = e.what();
        rec.rnorm = last_rnorm(res_.primal_history);
        rec.status = Status::breakdown;
        return rec;
      }
      direction_advance<T>(ds_, lq_.refl_curr, proc_.primal_column(), lq_.zeta_prev, work_);
      if (rule_.error_delay > 0) {
        zeta_window_.push_back(lq_.zeta_prev * lq_.zeta_prev);
        while (static_cast<int>(zeta_window_.size()) > rule_.error_delay - 1) zeta_window_.pop_front();
        if (k > rule_.error_delay)
          rec.error_lower_bound = sqrt(std::accumulate(zeta_window_.begin(), zeta_window_.end(), T(0)));
      }
    }
    const LqResiduals<T> est = bilq_residual_estimates(lq_, alpha, beta_k, beta_next, m);
    rec.rnorm_lq = est.rnorm_lq;
    rec.rnorm_cg = est.rnorm_cg;
    rec.clamped = est.clamped;
    rec.znorm = sqrt(lq_.znorm_sq);
    switch (cfg_.point) {
      case PrimalPoint::lq:
        rec.galerkin = false;
        break;
      case PrimalPoint::transfer:
        rec.galerkin = est.rnorm_cg && *est.rnorm_cg <= est.rnorm_lq;
        break;
      case PrimalPoint::cg:
        if (!est.rnorm_cg) {
          res_.message = "Galerkin point undefined at iteration " + std::to_string(k);
          rec.rnorm = last_rnorm(res_.primal_history);
          if (k == 1) rec.rnorm = nrm2<T>(b_);
          rec.status = Status::breakdown;
          return rec;
        }
        rec.galerkin = true;
        break;
    }
    rec.rnorm = rec.galerkin ? *est.rnorm_cg : est.rnorm_lq;
    const bool need_point = rule_.explicit_residuals || monitor_due(k) || !cfg_.x_exact.empty() || rec.rnorm <= thr_p_;
    if (need_point) {
      const std::vector<T> x = primal_point(rec.galerkin);
      assess(rec, x, false, k);
    } else if (!isfinite(rec.rnorm)) {
      rec.status = Status::breakdown;
    }
    return rec;
  }

  ConvergenceRecord<T> dual_iteration(int k, T u_norm_sq) {
    ConvergenceRecord<T> rec;
    rec.iteration = k;
    if (k > 1) {
      try {
        qmr_advance(qs_, lq_.refl_curr, lq_.delta);
      } catch (const Stagnation& e) {
        res_.message = e.what();
        rec.rnorm = last_rnorm(res_.dual_history);
        rec.status = Status::breakdown;
        return rec;
      }
      if (!Process::orthonormal) qs_.tau += u_norm_sq;
    }
    rec.rnorm = Process::orthonormal ? abs(qs_.psi_bar) : qmr_residual_bound(qs_);
    qmr_prepare<T>(qs_, proc_.dual_column(), lq_.lambda_prev, lq_.eps_prev);
    const bool need_point = rule_.explicit_residuals || monitor_due(k) || !cfg_.t_exact.empty() || rec.rnorm <= thr_d_;
    if (need_point)
      assess(rec, qs_.t, true, k);
    else if (!isfinite(rec.rnorm))
      rec.status = Status::breakdown;
    return rec;
  }

  /// An invariant subspace was reached at step k: the system whose basis
  /// vanished is solved exactly, the other cannot progress further.
  void finish_lucky(StepStatus s, std::optional<ConvergenceRecord<T>>& prec,
                    std::optional<ConvergenceRecord<T>>& drec) {
    if (prec && prec->status == Status::running) {
      if (v_vanished(s) && lq_.zeta_bar) {
        prec->galerkin = true;
        prec->rnorm = *prec->rnorm_cg;
        const std::vector<T> x = primal_point(true);
        prec->explicit_rnorm.reset();
        assess(*prec, x, false, prec->iteration);
        prec->status = Status::converged;
      } else {
        prec->status = Status::breakdown;
        if (res_.message.empty()) res_.message = "invariant subspace reached before the primal system converged";
      }
    }
    if (drec && drec->status == Status::running) {
      bool done = false;
      if (u_vanished(s)) {
        const auto [refl, delta] = sym_ortho(lq_.delta_bar, T(0));
        if (delta != T(0)) {
          qmr_advance(qs_, refl, delta);
          drec->rnorm = T(0);
          drec->explicit_rnorm.reset();
          assess(*drec, qs_.t, true, drec->iteration);
          drec->status = Status::converged;
          done = true;
        }
      }
      if (!done) {
        drec->status = Status::breakdown;
        if (res_.message.empty()) res_.message = "invariant subspace reached before the dual system converged";
      }
    }
    if (prec && prec->status == Status::running) prec->status = Status::breakdown;
    commit(prec, drec);
    if (p_active_) stop_primal(Status::breakdown);
    if (d_active_) stop_dual(Status::breakdown);
  }

  void commit(std::optional<ConvergenceRecord<T>>& prec, std::optional<ConvergenceRecord<T>>& drec) {
    if (prec) {
      res_.primal_history.push_back(*prec);
      if (prec->status != Status::running) stop_primal(prec->status);
    }
    if (drec) {
      res_.dual_history.push_back(*drec);
      if (drec->status != Status::running) stop_dual(drec->status);
    }
  }

  void stop_primal(Status s) {
    if (!p_active_) return;
    p_active_ = false;
    const bool galerkin = !res_.primal_history.empty() && res_.primal_history.back().galerkin;
    res_.x = primal_point(galerkin);
    res_.galerkin = galerkin;
    res_.primal_status = s;
    if (!res_.primal_history.empty()) res_.primal_history.back().status = s;
  }

  void stop_dual(Status s) {
    if (!d_active_) return;
    d_active_ = false;
    res_.t = qs_.t;
    res_.dual_status = s;
    if (!res_.dual_history.empty()) res_.dual_history.back().status = s;
  }

  void notify(const std::optional<ConvergenceRecord<T>>& prec, const std::optional<ConvergenceRecord<T>>& drec) {
    if (!cfg_.observer) return;
    cfg_.observer(prec ? &res_.primal_history.back() : nullptr, drec ? &res_.dual_history.back() : nullptr);
  }

  const LinearOperator<T>& op_;
  std::span<const T> b_, c_;
  const EngineConfig<T>& cfg_;
  StoppingRule<T> rule_;
  Process proc_;
  LqState<T> lq_;
  DirectionState<T> ds_;
  QmrState<T> qs_;
  std::vector<T> work_;
  std::deque<T> zeta_window_;
  T thr_p_{0}, thr_d_{0};
  bool p_active_ = false, d_active_ = false;
  EngineResult<T> res_;
};

}  // namespace detail

template <Real T, class Process>
EngineResult<T> run_engine(const LinearOperator<T>& op, std::span<const T> b, std::span<const T> c,
                           const EngineConfig<T>& cfg) {
  return detail::Engine<T, Process>(op, b, c, cfg).run();
}

}  // namespace krylov
