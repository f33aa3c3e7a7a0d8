#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"
#include "krylov/scalar.hpp"

namespace krylov {

template <Real T>
struct Triplet {
  std::size_t row;
  std::size_t col;
  T value;
};

/// Compressed sparse row storage. Column indices are strictly increasing
/// within each row.
template <Real T>
class SparseMatrix {
 public:
  SparseMatrix() = default;

  SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_ptr,
               std::vector<std::int32_t> cols, std::vector<T> vals)
      : n_rows_(n_rows),
        n_cols_(n_cols),
        row_ptr_(std::move(row_ptr)),
        cols_(std::move(cols)),
        vals_(std::move(vals)) {
    validate();
  }

  /// Assembles from unordered triplets; duplicates are summed. Explicit
  /// zeros are kept (they are part of the declared pattern).
  static SparseMatrix from_triplets(std::size_t n_rows, std::size_t n_cols,
                                    std::vector<Triplet<T>> entries) {
    if (n_cols > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
      throw InvalidArgument("column count exceeds 32-bit index range");
    for (const auto& e : entries)
      if (e.row >= n_rows || e.col >= n_cols)
        throw InvalidArgument("triplet index out of range");
    std::sort(entries.begin(), entries.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> row_ptr(n_rows + 1, 0);
    std::vector<std::int32_t> cols;
    std::vector<T> vals;
    cols.reserve(entries.size());
    vals.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
      const auto r = entries[i].row;
      const auto c = entries[i].col;
      T v = T(0);
      for (; i < entries.size() && entries[i].row == r && entries[i].col == c; ++i)
        v += entries[i].value;
      cols.push_back(static_cast<std::int32_t>(c));
      vals.push_back(v);
      ++row_ptr[r + 1];
    }
    std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
    return SparseMatrix(n_rows, n_cols, std::move(row_ptr), std::move(cols), std::move(vals));
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<Triplet<T>> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, T(1)});
    return from_triplets(n, n, std::move(t));
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return vals_.size(); }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::int32_t> cols() const noexcept { return cols_; }
  std::span<const T> values() const noexcept { return vals_; }

  /// y <- A x with the active kernel set.
  void multiply(std::span<const T> x, std::span<T> y) const {
    kernels::active<T>().spmv(n_rows_, row_ptr_.data(), cols_.data(), vals_.data(), x.data(),
                              y.data());
  }

  SparseMatrix transpose() const {
    std::vector<std::size_t> row_ptr(n_cols_ + 1, 0);
    for (auto c : cols_) ++row_ptr[static_cast<std::size_t>(c) + 1];
    std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
    std::vector<std::int32_t> cols(nnz());
    std::vector<T> vals(nnz());
    std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
    for (std::size_t r = 0; r < n_rows_; ++r)
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        const auto dst = next[static_cast<std::size_t>(cols_[p])]++;
        cols[dst] = static_cast<std::int32_t>(r);
        vals[dst] = vals_[p];
      }
    return SparseMatrix(n_cols_, n_rows_, std::move(row_ptr), std::move(cols), std::move(vals));
  }

  /// Diagonal entries; structurally absent entries are returned as zero.
  std::vector<T> diagonal() const {
    std::vector<T> d(std::min(n_rows_, n_cols_), T(0));
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
        if (static_cast<std::size_t>(cols_[p]) == r) d[r] = vals_[p];
    return d;
  }

  T frobenius_norm() const {
    T s = T(0);
    for (const T& v : vals_) s += v * v;
    return sqrt(s);
  }

  template <Real U>
  SparseMatrix<U> cast() const {
    std::vector<U> vals(vals_.size());
    std::transform(vals_.begin(), vals_.end(), vals.begin(),
                   [](const T& v) { return static_cast<U>(v); });
    return SparseMatrix<U>(n_rows_, n_cols_, row_ptr_, cols_, std::move(vals));
  }

 private:
  void validate() const {
    if (row_ptr_.size() != n_rows_ + 1 || row_ptr_.front() != 0)
      throw InvalidArgument("row pointer array has wrong shape");
    if (row_ptr_.back() != cols_.size() || cols_.size() != vals_.size())
      throw InvalidArgument("nonzero count does not match index/value arrays");
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (row_ptr_[r] > row_ptr_[r + 1]) throw InvalidArgument("row pointers not monotone");
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        if (cols_[p] < 0 || static_cast<std::size_t>(cols_[p]) >= n_cols_)
          throw InvalidArgument("column index out of range in row " + std::to_string(r));
        if (p > row_ptr_[r] && cols_[p] <= cols_[p - 1])
          throw InvalidArgument("column indices not increasing in row " + std::to_string(r));
      }
    }
  }

  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::int32_t> cols_;
  std::vector<T> vals_;
};

}  // namespace krylov
