#pragma once

// Dense reference computations and random problem factories for tests.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "krylov/biorth.hpp"
#include "krylov/kernels.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/sparse_matrix.hpp"
#include "krylov/ssy.hpp"

namespace oracle {

using krylov::Real;

/// Row-major dense matrix in any working precision.
template <Real T>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  T operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  T frobenius() const {
    T s = T(0);
    for (T v : a) s += v * v;
    return krylov::sqrt(s);
  }
};

template <Real T>
Dense<T> operator*(const Dense<T>& x, const Dense<T>& y) {
  Dense<T> z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

template <Real T>
Dense<T> operator-(Dense<T> x, const Dense<T>& y) {
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
  return x;
}

template <Real T>
Dense<T> transpose(const Dense<T>& x) {
  Dense<T> z(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

template <Real T>
Dense<T> to_dense(const krylov::SparseMatrix<T>& m) {
  Dense<T> d(m.n_rows(), m.n_cols());
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    for (std::size_t p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p)
      d(i, static_cast<std::size_t>(m.cols()[p])) = m.values()[p];
  return d;
}

/// Columns stored as vectors.
template <Real T>
Dense<T> from_columns(const std::vector<std::vector<T>>& cols) {
  Dense<T> d(cols.empty() ? 0 : cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < d.rows; ++i) d(i, j) = cols[j][i];
  return d;
}

template <Real T>
std::vector<T> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(dist(gen));
  return v;
}

/// shift I + G / sqrt(n) with G standard normal: eigenvalues cluster in a
/// disc of radius ~1 around `shift`, so the matrix is well conditioned
/// and strongly nonsymmetric.
template <Real T>
krylov::SparseMatrix<T> random_matrix(std::size_t n, std::uint64_t seed, double shift = 3.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<krylov::Triplet<T>> t;
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.push_back({i, j, static_cast<T>(dist(gen) * s + (i == j ? shift : 0.0))});
  return krylov::SparseMatrix<T>::from_triplets(n, n, std::move(t));
}

/// Symmetric counterpart: (G + G^T) / (2 sqrt(n)) + shift I.
template <Real T>
krylov::SparseMatrix<T> random_symmetric(std::size_t n, std::uint64_t seed, double shift = 3.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> g(n * n);
  for (auto& x : g) x = dist(gen);
  std::vector<krylov::Triplet<T>> t;
  const double s = 0.5 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.push_back({i, j, static_cast<T>((g[i * n + j] + g[j * n + i]) * s + (i == j ? shift : 0.0))});
  return krylov::SparseMatrix<T>::from_triplets(n, n, std::move(t));
}

/// Upper triangular matrix with eigenvalues 1..n and a random strictly
/// upper part: well-separated spectrum, nonnormal.
template <Real T>
krylov::SparseMatrix<T> separated_spectrum_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<krylov::Triplet<T>> t;
  const double s = 0.5 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, static_cast<T>(static_cast<double>(i + 1))});
    for (std::size_t j = i + 1; j < n; ++j) t.push_back({i, j, static_cast<T>(dist(gen) * s)});
  }
  return krylov::SparseMatrix<T>::from_triplets(n, n, std::move(t));
}

/// Full bases and coefficients of k process steps.
template <Real T>
struct Bases {
  std::vector<std::vector<T>> V, U;
  std::vector<T> alpha, beta, gamma;  ///< beta[0] = beta_1, beta[i] = beta_{i+1}
  std::vector<krylov::StepStatus> status;
};

template <Real T, class Process>
Bases<T> collect(const krylov::LinearOperator<T>& op, std::span<const T> b, std::span<const T> c, int k) {
  Process proc;
  const auto [beta1, gamma1] = proc.init(b, c);
  Bases<T> B;
  B.beta.push_back(beta1);
  B.gamma.push_back(gamma1);
  B.V.push_back(proc.state().v_curr);
  B.U.push_back(proc.state().u_curr);
  for (int i = 0; i < k; ++i) {
    const auto st = proc.step(op);
    B.status.push_back(st.status);
    B.alpha.push_back(st.coeffs.alpha);
    if (st.status != krylov::StepStatus::ok) break;
    B.beta.push_back(st.coeffs.beta_next);
    B.gamma.push_back(st.coeffs.gamma_next);
    B.V.push_back(proc.state().v_curr);
    B.U.push_back(proc.state().u_curr);
  }
  return B;
}

/// T_{rows x cols} built from alpha (diagonal), beta (subdiagonal) and
/// gamma (superdiagonal) of the collected coefficients.
template <Real T>
Dense<T> tridiag(const Bases<T>& B, std::size_t rows, std::size_t cols) {
  Dense<T> t(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    if (j < rows && j < B.alpha.size()) t(j, j) = B.alpha[j];
    if (j + 1 < rows) t(j + 1, j) = B.beta[j + 1];
    if (j + 1 < cols && j < rows) t(j, j + 1) = B.gamma[j + 1];
  }
  return t;
}

/// Gaussian elimination with partial pivoting, any working precision.
template <Real T>
std::vector<T> gauss_solve(Dense<T> a, std::vector<T> b) {
  const std::size_t n = a.rows;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = j;
    for (std::size_t i = j + 1; i < n; ++i)
      if (krylov::abs(a(i, j)) > krylov::abs(a(p, j))) p = i;
    if (p != j) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(j, k), a(p, k));
      std::swap(b[j], b[p]);
    }
    for (std::size_t i = j + 1; i < n; ++i) {
      const T f = a(i, j) / a(j, j);
      for (std::size_t k = j; k < n; ++k) a(i, k) -= f * a(j, k);
      b[i] -= f * b[j];
    }
  }
  for (std::size_t j = n; j-- > 0;) {
    for (std::size_t k = j + 1; k < n; ++k) b[j] -= a(j, k) * b[k];
    b[j] /= a(j, j);
  }
  return b;
}

inline Eigen::MatrixXd to_eigen(const Dense<double>& d) {
  Eigen::MatrixXd m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d(i, j);
  return m;
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> from_eigen(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Dense LU solve of A x = b.
inline std::vector<double> dense_solve(const Dense<double>& a, std::span<const double> b) {
  return from_eigen(to_eigen(a).partialPivLu().solve(to_eigen(b)));
}

/// Sparse LU solve (Eigen) for the larger generated systems.
inline std::vector<double> sparse_solve(const krylov::SparseMatrix<double>& m, std::span<const double> b,
                                        bool transpose = false) {
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    for (std::size_t p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p) {
      const auto j = static_cast<Eigen::Index>(m.cols()[p]);
      const auto r = static_cast<Eigen::Index>(i);
      if (transpose)
        t.emplace_back(j, r, m.values()[p]);
      else
        t.emplace_back(r, j, m.values()[p]);
    }
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(m.n_rows()), static_cast<Eigen::Index>(m.n_cols()));
  a.setFromTriplets(t.begin(), t.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  return from_eigen(lu.solve(to_eigen(b)));
}

/// Minimizer of ||M y - r|| (full column rank).
inline std::vector<double> least_squares(const Dense<double>& m, std::span<const double> r) {
  return from_eigen(to_eigen(m).colPivHouseholderQr().solve(to_eigen(r)));
}

template <Real T>
std::vector<T> matvec(const Dense<T>& m, std::span<const T> x) {
  std::vector<T> y(m.rows, T(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) y[i] += m(i, j) * x[j];
  return y;
}

template <Real T>
T norm(std::span<const T> x) {
  T s = T(0);
  for (T v : x) s += v * v;
  return krylov::sqrt(s);
}

template <Real T>
T distance(std::span<const T> x, std::span<const T> y) {
  T s = T(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return krylov::sqrt(s);
}

/// ||b - A x|| with the dense product.
template <Real T>
T residual(const Dense<T>& a, std::span<const T> x, std::span<const T> b) {
  const auto ax = matvec<T>(a, x);
  T s = T(0);
  for (std::size_t i = 0; i < b.size(); ++i) s += (b[i] - ax[i]) * (b[i] - ax[i]);
  return krylov::sqrt(s);
}

template <Real T>
std::vector<double> to_double(std::span<const T> x) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = krylov::to_double(x[i]);
  return y;
}

}  // namespace oracle
