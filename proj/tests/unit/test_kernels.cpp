#include <doctest.h>

#include <random>
#include <vector>

#include "krylov/kernels.hpp"
#include "krylov/sparse_matrix.hpp"

using namespace krylov;

namespace {

template <Real T>
std::vector<T> randv(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(d(gen));
  return v;
}

template <Real T>
SparseMatrix<T> random_csr(std::size_t rows, std::size_t cols, double density, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u;
  std::normal_distribution<double> d;
  std::vector<Triplet<T>> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (u(gen) < density) t.push_back({i, j, static_cast<T>(d(gen))});
  return SparseMatrix<T>::from_triplets(rows, cols, std::move(t));
}

template <Real T>
void compare_tables(kernels::Isa isa) {
  const auto& ref = kernels::table<T>(kernels::Isa::scalar);
  const auto& vec = kernels::table<T>(isa);
  std::mt19937_64 gen(11);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto x = randv<T>(n, gen);
    const auto y = randv<T>(n, gen);
    T mag = T(0);
    for (std::size_t i = 0; i < n; ++i) mag += krylov::abs(x[i] * y[i]);
    const T tol = T(4) * T(n + 1) * epsilon<T>() * (mag + T(1e-30));
    CHECK(krylov::abs(ref.dot(n, x.data(), y.data()) - vec.dot(n, x.data(), y.data())) <= tol);

    auto y1 = y, y2 = y;
    ref.axpy(n, T(0.75), x.data(), y1.data());
    vec.axpy(n, T(0.75), x.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(krylov::abs(y1[i] - y2[i]) <= T(2) * epsilon<T>() * (krylov::abs(y1[i]) + T(1)));

    y1 = y;
    y2 = y;
    ref.axpby(n, T(-1.5), x.data(), T(0.25), y1.data());
    vec.axpby(n, T(-1.5), x.data(), T(0.25), y2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(krylov::abs(y1[i] - y2[i]) <= T(2) * epsilon<T>() * (krylov::abs(y1[i]) + T(1)));

    y1 = x;
    y2 = x;
    ref.scal(n, T(3), y1.data());
    vec.scal(n, T(3), y2.data());
    CHECK(y1 == y2);
  }
  for (std::size_t rows : {1u, 7u, 33u, 100u}) {
    const auto m = random_csr<T>(rows, rows + 3, 0.2, gen);
    const auto x = randv<T>(rows + 3, gen);
    std::vector<T> y1(rows), y2(rows);
    ref.spmv(rows, m.row_ptr().data(), m.cols().data(), m.values().data(), x.data(), y1.data());
    vec.spmv(rows, m.row_ptr().data(), m.cols().data(), m.values().data(), x.data(), y2.data());
    for (std::size_t i = 0; i < rows; ++i) {
      T mag = T(0);
      for (std::size_t p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p)
        mag += krylov::abs(m.values()[p] * x[static_cast<std::size_t>(m.cols()[p])]);
      CHECK(krylov::abs(y1[i] - y2[i]) <= T(4) * T(rows + 3) * epsilon<T>() * (mag + T(1e-30)));
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels compute the textbook operations") {
  const auto& t = kernels::table<double>(kernels::Isa::scalar);
  const std::vector<double> x{1, 2, 3}, y0{4, 5, 6};
  CHECK(t.dot(3, x.data(), y0.data()) == 32.0);
  auto y = y0;
  t.axpy(3, 2.0, x.data(), y.data());
  CHECK(y == std::vector<double>{6, 9, 12});
  y = y0;
  t.axpby(3, 2.0, x.data(), -1.0, y.data());
  CHECK(y == std::vector<double>{-2, -1, 0});
  y = x;
  t.scal(3, -2.0, y.data());
  CHECK(y == std::vector<double>{-2, -4, -6});
  // [[1 0 2],[0 3 0]] (1,1,1)
  const std::vector<std::size_t> rp{0, 2, 3};
  const std::vector<std::int32_t> ci{0, 2, 1};
  const std::vector<double> v{1, 2, 3}, ones{1, 1, 1};
  std::vector<double> out(2);
  t.spmv(2, rp.data(), ci.data(), v.data(), ones.data(), out.data());
  CHECK(out == std::vector<double>{3, 3});
}

TEST_CASE_TEMPLATE("vector kernels match the scalar reference", T, float, double) {
  if (!kernels::isa_available(kernels::Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; comparing scalar with itself");
  }
  compare_tables<T>(kernels::isa_available(kernels::Isa::avx2) ? kernels::Isa::avx2 : kernels::Isa::scalar);
}

TEST_CASE("instruction set selection") {
  CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
  CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
  CHECK(kernels::isa_available(kernels::Isa::scalar));
  const auto before = kernels::active_isa();
  kernels::select_isa(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  const std::vector<double> x{1, 2};
  CHECK(dot<double>(x, x) == 5.0);
  if (kernels::isa_available(kernels::Isa::avx2)) {
    kernels::select_isa(kernels::Isa::avx2);
    CHECK(kernels::active_isa() == kernels::Isa::avx2);
  } else {
    CHECK_THROWS(kernels::select_isa(kernels::Isa::avx2));
  }
  kernels::select_isa(before);
}

#if defined(KRYLOV_HAVE_QUADMATH)
TEST_CASE("binary128 uses the scalar table") {
  const auto& t = kernels::table<quad>(kernels::Isa::avx2);
  const std::vector<quad> x{1, 2, 3};
  CHECK(t.dot(3, x.data(), x.data()) == quad(14));
}
#endif
