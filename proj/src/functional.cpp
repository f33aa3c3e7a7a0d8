#include "krylov/functional.hpp"

#include <algorithm>
#include <cmath>

#include "krylov/dual_solvers.hpp"
#include "krylov/error.hpp"

namespace krylov {

namespace {

/// Thomas algorithm for sub/diag/super systems (sub[0], super[n-1] unused).
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> super,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("spline end conditions give a singular system");
  return x;
}

}  // namespace

SplineInterpolant::SplineInterpolant(std::vector<double> nodes, std::vector<double> values, EndCondition left,
                                     EndCondition right)
    : x_(std::move(nodes)), y_(std::move(values)), left_(left), right_(right) {
  const std::size_t n = x_.size();
  if (n < 4) throw InvalidArgument("cubic spline needs at least 4 nodes");
  if (y_.size() != n) throw InvalidArgument("spline nodes and values differ in length");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw InvalidArgument("spline nodes must be strictly increasing");

  std::vector<double> sub(n, 0), diag(n, 0), super(n, 0), rhs(n, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    sub[i] = h0;
    diag[i] = 2 * (h0 + h1);
    super[i] = h1;
    rhs[i] = 6 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  const double hl = x_[1] - x_[0];
  diag[0] = left.a2 - left.a1 * hl / 3;
  super[0] = -left.a1 * hl / 6;
  rhs[0] = left.rhs - left.a1 * (y_[1] - y_[0]) / hl;
  const double hr = x_[n - 1] - x_[n - 2];
  sub[n - 1] = right.a1 * hr / 6;
  diag[n - 1] = right.a2 + right.a1 * hr / 3;
  rhs[n - 1] = right.rhs - right.a1 * (y_[n - 1] - y_[n - 2]) / hr;
  m_ = solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));
}

std::size_t SplineInterpolant::interval(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
  return std::min(i, x_.size() - 2);
}

double SplineInterpolant::value(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - x, b = x - x_[i];
  return m_[i] * a * a * a / (6 * h) + m_[i + 1] * b * b * b / (6 * h) + (y_[i] / h - m_[i] * h / 6) * a +
         (y_[i + 1] / h - m_[i + 1] * h / 6) * b;
}

double SplineInterpolant::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - x, b = x - x_[i];
  return -m_[i] * a * a / (2 * h) + m_[i + 1] * b * b / (2 * h) + (y_[i + 1] - y_[i]) / h -
         (m_[i + 1] - m_[i]) * h / 6;
}

double SplineInterpolant::second_derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  return (m_[i] * (x_[i + 1] - x) + m_[i + 1] * (x - x_[i])) / h;
}

SplineInterpolant cubic_spline(std::vector<double> nodes, std::vector<double> values, EndCondition left,
                               EndCondition right) {
  return SplineInterpolant(std::move(nodes), std::move(values), left, right);
}

double gauss3_integrate(const std::function<double(double)>& f, std::span<const double> breakpoints) {
  static const double node = std::sqrt(0.6);
  double sum = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) throw InvalidArgument("quadrature partition must be strictly increasing");
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    sum += half * (5 * f(mid - half * node) + 8 * f(mid) + 5 * f(mid + half * node)) / 9;
  }
  return sum;
}

double gauss3_integrate(const std::function<double(double)>& f, double a, double b, int subintervals) {
  if (!(a < b)) throw InvalidArgument("integration bounds must satisfy a < b");
  if (subintervals < 1) throw InvalidArgument("need at least one subinterval");
  std::vector<double> p(static_cast<std::size_t>(subintervals) + 1);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a + (b - a) * static_cast<double>(i) / subintervals;
  p.back() = b;
  return gauss3_integrate(f, p);
}

namespace {

SplineInterpolant reconstruct(const TestProblem& problem, std::span<const double> values, double chi2, double end0,
                              double end1, double chi1) {
  const std::size_t n = problem.x_coords.size();
  if (n == 0 || !problem.y_coords.empty()) throw InvalidArgument("reconstruction needs a 1D problem");
  if (values.size() != n) throw InvalidArgument("discrete solution does not match the grid");
  std::vector<double> nodes(n + 2), y(n + 2, 0.0);
  nodes.front() = 0;
  nodes.back() = 1;
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i + 1] = problem.x_coords[i];
    y[i + 1] = values[i];
  }
  // Boundary values are zero, so the chi3 term drops out of the end conditions.
  return SplineInterpolant(std::move(nodes), std::move(y), {chi1, chi2, end0}, {chi1, chi2, end1});
}

}  // namespace

SplineInterpolant primal_reconstruction(const TestProblem& problem, std::span<const double> u_D, const Fn1& f,
                                        OdeCoefficients chi) {
  return reconstruct(problem, u_D, chi.chi2, f(0.0), f(1.0), chi.chi1);
}

SplineInterpolant dual_reconstruction(const TestProblem& problem, std::span<const double> v_D, const Fn1& g,
                                      OdeCoefficients chi) {
  return reconstruct(problem, v_D, -chi.chi2, g(0.0), g(1.0), chi.chi1);
}

FunctionalEstimate estimate_functional(const TestProblem& problem, std::span<const double> u_D,
                                       std::span<const double> v_D, const Fn1& f, const Fn1& g,
                                       OdeCoefficients chi) {
  const SplineInterpolant uh = primal_reconstruction(problem, u_D, f, chi);
  const SplineInterpolant vh = dual_reconstruction(problem, v_D, g, chi);
  const auto& nodes = uh.breakpoints();
  FunctionalEstimate est;
  est.h = problem.h;
  est.naive = gauss3_integrate([&](double x) { return g(x) * uh.value(x); }, nodes);
  const double correction = gauss3_integrate(
      [&](double x) {
        const double fh = chi.chi1 * uh.second_derivative(x) + chi.chi2 * uh.derivative(x) + chi.chi3 * uh.value(x);
        return vh.value(x) * (fh - f(x));
      },
      nodes);
  est.corrected = est.naive - correction;
  return est;
}

double loglog_slope(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw InvalidArgument("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double lx = std::log(h[i]), ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SuperconvergenceReport superconvergence_study(std::span<const int> Ns, const SuperconvergenceOptions& opt) {
  SuperconvergenceReport rep;
  const double J = ode_reference_functional();
  const Fn1 f = [chi = opt.chi](double x) { return ode_reference_f(x, chi); };
  const Fn1 g = ode_reference_g;
  StoppingRule<double> rule;
  rule.atol = opt.atol;
  rule.rtol = opt.rtol;
  rule.max_iterations = opt.max_iterations;
  std::vector<double> hs, naive, corrected;
  for (int N : Ns) {
    if (N < 16) throw InvalidArgument("superconvergence study needs N >= 16");
    const TestProblem p = ode_1d_reference(N, opt.chi);
    const auto op = from_sparse(p.matrix);
    const DualSolution<double> s = bilqr_solve<double>(op, p.b, p.c, rule);
    const FunctionalEstimate e = estimate_functional(p, s.x, s.t, f, g, opt.chi);
    SuperconvergenceRow row;
    row.N = N;
    row.h = p.h;
    row.naive_error = std::abs(e.naive - J);
    row.corrected_error = std::abs(e.corrected - J);
    row.iterations = s.iterations;
    row.converged = s.primal_status == Status::converged && s.dual_status == Status::converged;
    if (row.converged && row.naive_error > 0 && row.corrected_error > 0) {
      hs.push_back(row.h);
      naive.push_back(row.naive_error);
      corrected.push_back(row.corrected_error);
    }
    rep.rows.push_back(row);
  }
  if (hs.size() >= 2) {
    rep.naive_slope = loglog_slope(hs, naive);
    rep.corrected_slope = loglog_slope(hs, corrected);
  }
  return rep;
}

}  // namespace krylov
