#include "krylov/problems.hpp"

#include <cmath>
#include <numbers>

#include "krylov/error.hpp"

namespace krylov {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TestProblem polar_poisson(int n_r, int n_theta, double R, const Fn2& f, const Fn1& g, const Fn2& exact) {
  if (n_r < 3 || n_theta < 3) throw InvalidArgument("polar grid needs at least 3 nodes per direction");
  if (!(R > 0)) throw InvalidArgument("radius must be positive");
  if (!f || !g) throw InvalidArgument("missing source or boundary function");
  const auto M = static_cast<std::size_t>(n_r);
  const auto N = static_cast<std::size_t>(n_theta);
  const std::size_t n = M * N;
  const double dr = 2 * R / (2 * n_r + 1);
  const double dtheta = 2 * pi / n_theta;

  TestProblem p;
  p.name = "polar-poisson";
  p.h = dr;
  p.b.resize(n);
  p.x_coords.resize(n);
  p.y_coords.resize(n);
  if (exact) p.exact_primal.resize(n);
  std::vector<Triplet<double>> t;
  t.reserve(5 * n);
  for (std::size_t j = 0; j < N; ++j) {
    const double theta = static_cast<double>(j) * dtheta;
    for (std::size_t i = 0; i < M; ++i) {
      const std::size_t row = j * M + i;
      const double r = (static_cast<double>(i) + 0.5) * dr;
      const double r_out = static_cast<double>(i + 1) * dr;
      const double r_in = static_cast<double>(i) * dr;
      const double radial = 1.0 / (r * dr * dr);
      const double angular = 1.0 / (r * r * dtheta * dtheta);
      p.x_coords[row] = r;
      p.y_coords[row] = theta;
      p.b[row] = f(r, theta);
      if (exact) p.exact_primal[row] = exact(r, theta);
      t.push_back({row, row, -(r_out + r_in) * radial - 2 * angular});
      if (i + 1 < M)
        t.push_back({row, row + 1, r_out * radial});
      else
        p.b[row] -= r_out * radial * g(theta);
      if (i > 0) t.push_back({row, row - 1, r_in * radial});
      t.push_back({row, ((j + 1) % N) * M + i, angular});
      t.push_back({row, ((j + N - 1) % N) * M + i, angular});
    }
  }
  p.matrix = SparseMatrix<double>::from_triplets(n, n, std::move(t));
  if (exact) p.exact_kind = ExactKind::continuous;
  return p;
}

TestProblem polar_poisson_reference(int n_r, int n_theta) {
  return polar_poisson(
      n_r, n_theta, 1.0, [](double, double th) { return -3 * std::cos(th); }, [](double) { return 0.0; },
      [](double r, double th) { return r * (1 - r) * std::cos(th); });
}

TestProblem ode_1d(int N, OdeCoefficients chi, const Fn1& f, const Fn1& g, const Fn1& exact) {
  if (N < 2) throw InvalidArgument("ode_1d needs N >= 2");
  if (!f || !g) throw InvalidArgument("missing source or functional weight");
  const auto n = static_cast<std::size_t>(N);
  const double h = 1.0 / (N + 1);
  TestProblem p;
  p.name = "ode1d";
  p.h = h;
  p.b.resize(n);
  p.c.resize(n);
  p.x_coords.resize(n);
  if (exact) p.exact_primal.resize(n);
  std::vector<Triplet<double>> t;
  t.reserve(3 * n);
  const double diag = -2 * chi.chi1 + chi.chi3 * h * h;
  const double up = chi.chi1 + 0.5 * chi.chi2 * h;
  const double down = chi.chi1 - 0.5 * chi.chi2 * h;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1) * h;
    p.x_coords[i] = x;
    p.b[i] = h * h * f(x);
    p.c[i] = h * h * g(x);
    if (exact) p.exact_primal[i] = exact(x);
    t.push_back({i, i, diag});
    if (i + 1 < n) t.push_back({i, i + 1, up});
    if (i > 0) t.push_back({i, i - 1, down});
  }
  p.matrix = SparseMatrix<double>::from_triplets(n, n, std::move(t));
  if (exact) p.exact_kind = ExactKind::continuous;
  return p;
}

double ode_reference_f(double x, OdeCoefficients chi) {
  return -chi.chi1 * pi * pi * std::sin(pi * x) + chi.chi2 * pi * std::cos(pi * x) + chi.chi3 * std::sin(pi * x);
}

double ode_reference_g(double x) { return std::exp(x); }

double ode_reference_functional() { return pi * (std::numbers::e + 1) / (pi * pi + 1); }

TestProblem ode_1d_reference(int N, OdeCoefficients chi) {
  return ode_1d(
      N, chi, [chi](double x) { return ode_reference_f(x, chi); }, ode_reference_g,
      [](double x) { return std::sin(pi * x); });
}

TestProblem convdiff_2d(int N, ConvDiffCoefficients kappa, const Fn2& f, const Fn2& g, const Fn2& exact) {
  if (N < 2) throw InvalidArgument("convdiff_2d needs N >= 2");
  if (!f || !g) throw InvalidArgument("missing source or functional weight");
  const auto m = static_cast<std::size_t>(N);
  const std::size_t n = m * m;
  const double h = 1.0 / (N + 1);
  const double diag = -4 * kappa.kappa1;
  const double up = kappa.kappa1 + 0.5 * kappa.kappa2 * h;
  const double down = kappa.kappa1 - 0.5 * kappa.kappa2 * h;
  TestProblem p;
  p.name = "convdiff2d";
  p.h = h;
  p.b.resize(n);
  p.c.resize(n);
  p.x_coords.resize(n);
  p.y_coords.resize(n);
  if (exact) p.exact_primal.resize(n);
  std::vector<Triplet<double>> t;
  t.reserve(5 * n);
  for (std::size_t j = 0; j < m; ++j) {
    const double y = static_cast<double>(j + 1) * h;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = static_cast<double>(i + 1) * h;
      const std::size_t row = j * m + i;
      p.x_coords[row] = x;
      p.y_coords[row] = y;
      p.b[row] = h * h * f(x, y);
      p.c[row] = h * h * g(x, y);
      if (exact) p.exact_primal[row] = exact(x, y);
      t.push_back({row, row, diag});
      if (i + 1 < m) t.push_back({row, row + 1, up});
      if (i > 0) t.push_back({row, row - 1, down});
      if (j + 1 < m) t.push_back({row, row + m, up});
      if (j > 0) t.push_back({row, row - m, down});
    }
  }
  p.matrix = SparseMatrix<double>::from_triplets(n, n, std::move(t));
  if (exact) p.exact_kind = ExactKind::continuous;
  return p;
}

TestProblem convdiff_2d_reference(int N, ConvDiffCoefficients kappa) {
  auto f = [kappa](double x, double y) {
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    const double cx = std::cos(pi * x), cy = std::cos(pi * y);
    return -2 * pi * pi * kappa.kappa1 * sx * sy + kappa.kappa2 * pi * (cx * sy + sx * cy);
  };
  return convdiff_2d(
      N, kappa, f, [](double x, double y) { return std::exp(x + y); },
      [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
}

}  // namespace krylov
