#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/scalar.hpp"
#include "krylov/sparse_matrix.hpp"

namespace krylov {

/// Matrix-free operator: products with A and with A^T.
///
/// Callbacks receive an input of length n_cols (forward) or n_rows
/// (adjoint) and overwrite the output. Operators are immutable and may be
/// shared between concurrent solves as long as the callbacks are
/// re-entrant.
template <Real T>
class LinearOperator {
 public:
  using Apply = std::function<void(std::span<const T>, std::span<T>)>;

  LinearOperator(std::size_t n_rows, std::size_t n_cols, Apply forward, Apply adjoint)
      : n_rows_(n_rows), n_cols_(n_cols), forward_(std::move(forward)), adjoint_(std::move(adjoint)) {
    if (n_rows == 0 || n_cols == 0) throw InvalidArgument("operator dimensions must be positive");
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  bool square() const noexcept { return n_rows_ == n_cols_; }

  /// y <- A x
  void apply(std::span<const T> x, std::span<T> y) const {
    check(x.size() == n_cols_ && y.size() == n_rows_);
    forward_(x, y);
  }

  /// y <- A^T x
  void apply_adjoint(std::span<const T> x, std::span<T> y) const {
    check(x.size() == n_rows_ && y.size() == n_cols_);
    adjoint_(x, y);
  }

  /// The operator with forward and adjoint exchanged (A^T).
  LinearOperator transposed() const { return LinearOperator(n_cols_, n_rows_, adjoint_, forward_); }

 private:
  static void check(bool ok) {
    if (!ok) throw InvalidArgument("operator applied to a vector of the wrong length");
  }

  std::size_t n_rows_;
  std::size_t n_cols_;
  Apply forward_;
  Apply adjoint_;
};

/// Operator backed by CSR storage. The transpose is assembled once so both
/// products run through the same row-gather kernel.
template <Real T>
LinearOperator<T> from_sparse(SparseMatrix<T> m) {
  auto a = std::make_shared<const SparseMatrix<T>>(std::move(m));
  auto at = std::make_shared<const SparseMatrix<T>>(a->transpose());
  return LinearOperator<T>(
      a->n_rows(), a->n_cols(),
      [a](std::span<const T> x, std::span<T> y) { a->multiply(x, y); },
      [at](std::span<const T> x, std::span<T> y) { at->multiply(x, y); });
}

/// Diagonal used for left Jacobi scaling. All entries must be nonzero.
template <Real T>
class DiagonalScaling {
 public:
  explicit DiagonalScaling(std::vector<T> d) : d_(std::move(d)) {
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (d_[i] == T(0))
        throw InvalidScaling("zero diagonal entry at index " + std::to_string(i));
  }

  static DiagonalScaling from_matrix(const SparseMatrix<T>& m) { return DiagonalScaling(m.diagonal()); }

  std::span<const T> values() const noexcept { return d_; }
  std::size_t size() const noexcept { return d_.size(); }

  /// x <- D^{-1} x
  void apply_inverse(std::span<T> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] /= d_[i];
  }

 private:
  std::vector<T> d_;
};

/// Left-scaled operator v -> D^{-1} A v with adjoint u -> A^T D^{-1} u.
/// The scaled system D^{-1} A x = D^{-1} b has the same solution as A x = b.
template <Real T>
LinearOperator<T> jacobi_scaled(const LinearOperator<T>& op, const DiagonalScaling<T>& d) {
  if (d.size() != op.n_rows()) throw InvalidScaling("scaling length does not match operator");
  auto shared_d = std::make_shared<const DiagonalScaling<T>>(d);
  auto inner = std::make_shared<const LinearOperator<T>>(op);
  return LinearOperator<T>(
      op.n_rows(), op.n_cols(),
      [inner, shared_d](std::span<const T> x, std::span<T> y) {
        inner->apply(x, y);
        shared_d->apply_inverse(y);
      },
      [inner, shared_d](std::span<const T> x, std::span<T> y) {
        std::vector<T> scaled(x.begin(), x.end());
        shared_d->apply_inverse(scaled);
        inner->apply_adjoint(scaled, y);
      });
}

/// Symmetric 2n x 2n operator [0 A; A^T 0] acting on (t, x).
template <Real T>
LinearOperator<T> augmented_operator(const LinearOperator<T>& op) {
  if (!op.square()) throw InvalidArgument("augmented operator requires a square operator");
  const std::size_t n = op.n_rows();
  auto inner = std::make_shared<const LinearOperator<T>>(op);
  auto apply = [inner, n](std::span<const T> in, std::span<T> out) {
    inner->apply(in.subspan(n, n), out.subspan(0, n));
    inner->apply_adjoint(in.subspan(0, n), out.subspan(n, n));
  };
  return LinearOperator<T>(2 * n, 2 * n, apply, apply);
}

}  // namespace krylov
