#include "krylov/scalar.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace krylov {

template <>
std::string to_string<float>(float x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(x));
  return buf;
}

template <>
std::string to_string<double>(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

template <class T, class Fn>
T parse_with(std::string_view text, Fn fn) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty numeric field");
  char* end = nullptr;
  errno = 0;
  const T v = fn(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace

template <>
float parse_real<float>(std::string_view text) {
  return parse_with<float>(text, [](const char* p, char** e) { return std::strtof(p, e); });
}

template <>
double parse_real<double>(std::string_view text) {
  return parse_with<double>(text, [](const char* p, char** e) { return std::strtod(p, e); });
}

#if defined(KRYLOV_HAVE_QUADMATH)
template <>
std::string to_string<quad>(quad x) {
  char buf[64];
  quadmath_snprintf(buf, sizeof buf, "%.36Qg", x);
  return buf;
}

template <>
quad parse_real<quad>(std::string_view text) {
  return parse_with<quad>(text, [](const char* p, char** e) { return strtoflt128(p, e); });
}
#endif

}  // namespace krylov
