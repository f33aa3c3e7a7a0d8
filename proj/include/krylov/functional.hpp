#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krylov/problems.hpp"

namespace krylov {

/// a2 S''(x_end) + a1 S'(x_end) = rhs.
struct EndCondition {
  double a2 = 1;
  double a1 = 0;
  double rhs = 0;

  static EndCondition natural() { return {1, 0, 0}; }
  static EndCondition clamped(double slope) { return {0, 1, slope}; }
  static EndCondition curvature(double value) { return {1, 0, value}; }
};

/// Interpolating cubic spline stored by its nodal second derivatives.
class SplineInterpolant {
 public:
  SplineInterpolant(std::vector<double> nodes, std::vector<double> values, EndCondition left, EndCondition right);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const std::vector<double>& breakpoints() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& moments() const { return m_; }
  const EndCondition& left_condition() const { return left_; }
  const EndCondition& right_condition() const { return right_; }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_, y_, m_;
  EndCondition left_, right_;
};

SplineInterpolant cubic_spline(std::vector<double> nodes, std::vector<double> values, EndCondition left,
                               EndCondition right);

/// Composite 3-point Gauss-Legendre rule on the cells of `breakpoints`.
double gauss3_integrate(const std::function<double(double)>& f, std::span<const double> breakpoints);
/// Same on `subintervals` equal cells of [a, b].
double gauss3_integrate(const std::function<double(double)>& f, double a, double b, int subintervals);

struct FunctionalEstimate {
  double naive = 0;
  double corrected = 0;
  double h = 0;
};

/// u_h: spline through (0, u_D, 0) with chi1 u_h'' + chi2 u_h' = f at both
/// ends, so that L u_h = f there.
SplineInterpolant primal_reconstruction(const TestProblem& problem, std::span<const double> u_D, const Fn1& f,
                                        OdeCoefficients chi);
/// v_h: same with the adjoint operator (chi2 negated) and g.
SplineInterpolant dual_reconstruction(const TestProblem& problem, std::span<const double> v_D, const Fn1& g,
                                      OdeCoefficients chi);

/// Builds u_h and v_h from the interior values u_D, v_D of a one-dimensional
/// problem (zero boundary values), imposing L u_h = f and L* v_h = g at both
/// ends, and evaluates <g, u_h> and <g, u_h> - <v_h, f_h - f> with f_h = L u_h.
FunctionalEstimate estimate_functional(const TestProblem& problem, std::span<const double> u_D,
                                       std::span<const double> v_D, const Fn1& f, const Fn1& g,
                                       OdeCoefficients chi);

/// Least-squares slope of log(err) against log(h).
double loglog_slope(std::span<const double> h, std::span<const double> err);

struct SuperconvergenceRow {
  int N = 0;
  double h = 0;
  double naive_error = 0;
  double corrected_error = 0;
  int iterations = 0;
  bool converged = false;
};

struct SuperconvergenceReport {
  std::vector<SuperconvergenceRow> rows;
  std::optional<double> naive_slope;
  std::optional<double> corrected_slope;
};

struct SuperconvergenceOptions {
  OdeCoefficients chi;
  double atol = 0;
  double rtol = 1e-8;
  int max_iterations = 20000;
};

/// Solves the reference 1D primal/dual pair with BiLQR for each N and
/// compares both functional estimates with the exact value.
SuperconvergenceReport superconvergence_study(std::span<const int> Ns, const SuperconvergenceOptions& opt);

}  // namespace krylov
