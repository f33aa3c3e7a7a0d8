#pragma once

#include "krylov/kernels.hpp"

namespace krylov::kernels::avx2 {

// Defined in avx2.cpp, which is compiled with -mavx2 -mfma. Only call
// after checking isa_available(Isa::avx2).
const Table<float>& table_f32();
const Table<double>& table_f64();

}  // namespace krylov::kernels::avx2
