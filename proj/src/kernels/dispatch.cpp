#include <atomic>
#include <cstdlib>
#include <string>

#include "krylov/error.hpp"
#include "krylov/kernels.hpp"

#if defined(KRYLOV_HAVE_AVX2)
#include "avx2.hpp"
#endif

namespace krylov::kernels {
namespace {

template <Real T>
const Table<T>& scalar_table() {
  static const Table<T> t{reference::dot<T>, reference::axpy<T>, reference::axpby<T>,
                          reference::scal<T>, reference::spmv<T>};
  return t;
}

bool cpu_has_avx2() {
#if defined(KRYLOV_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("KRYLOV_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  if (!isa_available(isa))
    throw InvalidArgument("instruction set not available: " + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

template <Real T>
const Table<T>& table(Isa isa) {
#if defined(KRYLOV_HAVE_AVX2)
  if (isa == Isa::avx2 && cpu_has_avx2()) {
    if constexpr (std::is_same_v<T, double>) return avx2::table_f64();
    if constexpr (std::is_same_v<T, float>) return avx2::table_f32();
  }
#else
  (void)isa;
#endif
  return scalar_table<T>();
}

template const Table<float>& table<float>(Isa);
template const Table<double>& table<double>(Isa);
#if defined(KRYLOV_HAVE_QUADMATH)
template const Table<quad>& table<quad>(Isa);
#endif

}  // namespace krylov::kernels
