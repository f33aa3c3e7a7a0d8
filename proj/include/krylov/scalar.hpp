#pragma once

// Working-precision scalar support: binary32, binary64 and, where the
// toolchain provides __float128 with libquadmath, binary128.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#if defined(KRYLOV_HAVE_QUADMATH)
extern "C" {
#include <quadmath.h>
}
#endif

namespace krylov {

#if defined(KRYLOV_HAVE_QUADMATH)
using quad = __float128;
inline constexpr bool has_quad = true;
#else
inline constexpr bool has_quad = false;
#endif

template <class T>
struct is_real : std::false_type {};
template <>
struct is_real<float> : std::true_type {};
template <>
struct is_real<double> : std::true_type {};
#if defined(KRYLOV_HAVE_QUADMATH)
template <>
struct is_real<quad> : std::true_type {};
#endif

template <class T>
concept Real = is_real<T>::value;

template <Real T>
constexpr T epsilon() {
#if defined(KRYLOV_HAVE_QUADMATH)
  if constexpr (std::is_same_v<T, quad>) {
    return FLT128_EPSILON;
  } else
#endif
  {
    return std::numeric_limits<T>::epsilon();
  }
}

template <Real T>
constexpr std::string_view precision_name() {
  if constexpr (std::is_same_v<T, float>) {
    return "single";
  } else if constexpr (std::is_same_v<T, double>) {
    return "double";
  } else {
    return "quad";
  }
}

inline float sqrt(float x) { return std::sqrt(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline float abs(float x) { return std::fabs(x); }
inline double abs(double x) { return std::fabs(x); }
inline bool isfinite(float x) { return std::isfinite(x); }
inline bool isfinite(double x) { return std::isfinite(x); }
inline float pow(float x, float y) { return std::pow(x, y); }
inline double pow(double x, double y) { return std::pow(x, y); }

#if defined(KRYLOV_HAVE_QUADMATH)
inline quad sqrt(quad x) { return sqrtq(x); }
inline quad abs(quad x) { return fabsq(x); }
inline bool isfinite(quad x) { return finiteq(x) != 0; }
inline quad pow(quad x, quad y) { return powq(x, y); }
#endif

template <Real T>
T max_abs(T a, T b) {
  const T aa = abs(a);
  const T bb = abs(b);
  return aa > bb ? aa : bb;
}

template <Real T>
constexpr double to_double(T x) {
  return static_cast<double>(x);
}

/// Decimal text for a scalar, round-trippable for binary32/64 and
/// 36 significant digits for binary128.
template <Real T>
std::string to_string(T x);

/// Parses a decimal literal in the requested precision; throws
/// std::invalid_argument on malformed text.
template <Real T>
T parse_real(std::string_view text);

}  // namespace krylov
