#pragma once

#include <utility>

#include "krylov/scalar.hpp"

namespace krylov {

/// Symmetric Givens reflection [c s; s -c] acting on two consecutive
/// coordinates. c^2 + s^2 = 1 up to rounding.
template <Real T>
struct GivensReflection {
  T c{-1};
  T s{0};
};

template <Real T>
struct SymOrtho {
  GivensReflection<T> reflection;
  T delta;  ///< sqrt(a^2 + b^2) >= 0
};

/// Reflection mapping (a, b) to (delta, 0).
///
/// delta is formed by scaling with max(|a|, |b|) before squaring so that
/// neither overflow nor underflow occurs for finite inputs. The (0, 0)
/// input returns the initialization reflection c = -1, s = 0 with
/// delta = 0.
template <Real T>
SymOrtho<T> sym_ortho(T a, T b) {
  const T scale = max_abs(a, b);
  if (scale == T(0)) return {{T(-1), T(0)}, T(0)};
  const T as = a / scale;
  const T bs = b / scale;
  const T delta = scale * sqrt(as * as + bs * bs);
  return {{a / delta, b / delta}, delta};
}

/// Returns (c a + s b, s a - c b). The reflection is its own inverse.
template <Real T>
std::pair<T, T> apply_reflection(const GivensReflection<T>& r, T a, T b) {
  return {r.c * a + r.s * b, r.s * a - r.c * b};
}

}  // namespace krylov
