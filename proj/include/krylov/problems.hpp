#pragma once

#include <functional>
#include <string>
#include <vector>

#include "krylov/sparse_matrix.hpp"

namespace krylov {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// How a stored exact solution relates to the linear system.
enum class ExactKind {
  none,
  /// Continuous solution sampled at the grid nodes; satisfies the
  /// discrete equations only up to the truncation error.
  continuous,
  /// Solution of the discrete system itself.
  discrete,
};

struct TestProblem {
  std::string name;
  SparseMatrix<double> matrix;
  std::vector<double> b;
  /// Dual right-hand side; empty when the experiment has none.
  std::vector<double> c;
  std::vector<double> exact_primal;
  std::vector<double> exact_dual;
  ExactKind exact_kind = ExactKind::none;
  /// Grid spacing (radial spacing for the polar grid).
  double h = 0;
  /// Node coordinates per unknown: x (or r) and y (or theta). y is empty
  /// for one-dimensional problems.
  std::vector<double> x_coords;
  std::vector<double> y_coords;
};

/// Poisson equation on the disc of radius R in polar coordinates with
/// Dirichlet data g on r = R. Radial nodes r_i = (i - 1/2) dr, i = 1..n_r,
/// with dr = 2R / (2 n_r + 1) so that r = R sits where node n_r + 1 would;
/// angular nodes theta_j = 2 pi j / n_theta with periodic
/// coupling. Unknown (i, j) has index j n_r + i - 1. The flux through
/// r = 0 vanishes, which removes the axis from the stencil.
TestProblem polar_poisson(int n_r, int n_theta, double R, const Fn2& f, const Fn1& g,
                          const Fn2& exact = {});

/// R = 1, f = -3 cos(theta), g = 0, exact u = r (1 - r) cos(theta).
TestProblem polar_poisson_reference(int n_r = 50, int n_theta = 50);

struct OdeCoefficients {
  double chi1 = 1, chi2 = 1, chi3 = 1;
};

/// chi1 u'' + chi2 u' + chi3 u = f on (0, 1), u(0) = u(1) = 0, centered
/// differences on N interior nodes, rows scaled by h^2. b = h^2 f, c = h^2 g.
TestProblem ode_1d(int N, OdeCoefficients chi, const Fn1& f, const Fn1& g, const Fn1& exact = {});

/// Manufactured u = sin(pi x) and g = e^x.
TestProblem ode_1d_reference(int N = 50, OdeCoefficients chi = {});
double ode_reference_f(double x, OdeCoefficients chi);
double ode_reference_g(double x);
/// Value of the functional int_0^1 g u dx for the reference problem.
double ode_reference_functional();

struct ConvDiffCoefficients {
  double kappa1 = 5, kappa2 = 20;
};

/// kappa1 (u_xx + u_yy) + kappa2 (u_x + u_y) = f on the unit square with
/// zero Dirichlet data; N^2 interior nodes stored column by column
/// (index i + N j, x varying fastest), rows scaled by h^2.
TestProblem convdiff_2d(int N, ConvDiffCoefficients kappa, const Fn2& f, const Fn2& g, const Fn2& exact = {});

/// Manufactured u = sin(pi x) sin(pi y) and g = e^(x + y).
TestProblem convdiff_2d_reference(int N = 50, ConvDiffCoefficients kappa = {});

}  // namespace krylov
