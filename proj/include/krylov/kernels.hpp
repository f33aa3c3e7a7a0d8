#pragma once

// Dense BLAS-1 and CSR kernels behind a runtime-selected instruction set.
//
// Every instruction set provides the same table of function pointers; the
// scalar table is the reference implementation the vector variants are
// tested against. Vector variants may reorder reductions, so results agree
// with the reference to rounding, not bitwise.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "krylov/scalar.hpp"

namespace krylov::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the running CPU supports `isa` and it was compiled in.
bool isa_available(Isa isa);

/// Instruction set used by the span-level wrappers. Chosen once from CPU
/// features; KRYLOV_SIMD=scalar|avx2 overrides the detection.
Isa active_isa();

/// Forces an instruction set; throws InvalidArgument if unavailable.
void select_isa(Isa isa);

template <Real T>
struct Table {
  T (*dot)(std::size_t n, const T* x, const T* y);
  /// y <- a x + y
  void (*axpy)(std::size_t n, T a, const T* x, T* y);
  /// y <- a x + b y
  void (*axpby)(std::size_t n, T a, const T* x, T b, T* y);
  void (*scal)(std::size_t n, T a, T* x);
  /// y <- A x for CSR storage
  void (*spmv)(std::size_t n_rows, const std::size_t* row_ptr,
               const std::int32_t* cols, const T* vals, const T* x, T* y);
};

/// Kernel table for a given instruction set. binary128 only has the
/// scalar table; asking for another one returns the scalar table too.
template <Real T>
const Table<T>& table(Isa isa);

template <Real T>
const Table<T>& active() {
  return table<T>(active_isa());
}

namespace reference {

template <Real T>
T dot(std::size_t n, const T* x, const T* y) {
  T s = T(0);
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

template <Real T>
void axpy(std::size_t n, T a, const T* x, T* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <Real T>
void axpby(std::size_t n, T a, const T* x, T b, T* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

template <Real T>
void scal(std::size_t n, T a, T* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

template <Real T>
void spmv(std::size_t n_rows, const std::size_t* row_ptr,
          const std::int32_t* cols, const T* vals, const T* x, T* y) {
  for (std::size_t i = 0; i < n_rows; ++i) {
    T s = T(0);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      s += vals[p] * x[static_cast<std::size_t>(cols[p])];
    y[i] = s;
  }
}

}  // namespace reference
}  // namespace krylov::kernels

namespace krylov {

template <Real T>
T dot(std::span<const T> x, std::span<const T> y) {
  return kernels::active<T>().dot(x.size(), x.data(), y.data());
}

template <Real T>
T nrm2(std::span<const T> x) {
  return sqrt(dot<T>(x, x));
}

template <Real T>
void axpy(T a, std::span<const T> x, std::span<T> y) {
  kernels::active<T>().axpy(x.size(), a, x.data(), y.data());
}

template <Real T>
void axpby(T a, std::span<const T> x, T b, std::span<T> y) {
  kernels::active<T>().axpby(x.size(), a, x.data(), b, y.data());
}

template <Real T>
void scal(T a, std::span<T> x) {
  kernels::active<T>().scal(x.size(), a, x.data());
}

}  // namespace krylov
