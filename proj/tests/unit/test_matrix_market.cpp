#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "krylov/error.hpp"
#include "krylov/matrix_market.hpp"
#include "oracle.hpp"

using namespace krylov;

namespace {

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_matrix_market(in);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("general coordinate file") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "\n"
      "2 3 3\n"
      "1 1 1.5\n"
      "2 3 -2e1\n"
      "1 1 0.5\n");
  const auto m = read_matrix_market(in);
  CHECK(m.n_rows() == 2);
  CHECK(m.n_cols() == 3);
  CHECK(m.nnz() == 2);
  const auto d = oracle::to_dense(m);
  CHECK(d(0, 0) == 2.0);
  CHECK(d(1, 2) == -20.0);
}

TEST_CASE("symmetric file is expanded") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "3 3 3\n"
      "1 1 4\n"
      "2 1 -1\n"
      "3 2 2\n");
  const auto d = oracle::to_dense(read_matrix_market(in));
  CHECK(d(0, 1) == -1.0);
  CHECK(d(1, 0) == -1.0);
  CHECK(d(1, 2) == 2.0);
  CHECK(d(2, 1) == 2.0);
  CHECK(d(0, 0) == 4.0);
}

TEST_CASE("malformed files name the offending line") {
  CHECK(parse_error("") == "line 1: empty file");
  CHECK(parse_error("%%MatrixMarket matrix array real general\n2 2\n").rfind("line 1:", 0) == 0);
  CHECK(parse_error("%%MatrixMarket matrix coordinate complex general\n").rfind("line 1:", 0) == 0);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n").rfind("line 3:", 0) == 0);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1.0\n").rfind("line 3:", 0) == 0);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n").find("expected 2 entries") !=
        std::string::npos);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real symmetric\n2 3 0\n").rfind("line 2:", 0) == 0);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n").rfind("line 3:", 0) == 0);
}

TEST_CASE("write then read round-trips exactly") {
  const auto m = oracle::random_matrix<double>(12, 4);
  std::stringstream s;
  write_matrix_market(s, m);
  const auto r = read_matrix_market(s);
  CHECK(r.n_rows() == m.n_rows());
  CHECK(r.nnz() == m.nnz());
  CHECK(std::ranges::equal(r.values(), m.values()));
  CHECK(std::ranges::equal(r.cols(), m.cols()));
}

TEST_CASE("vector files") {
  std::istringstream plain("# header\n1 2.5\n-3\n");
  CHECK(read_vector(plain) == std::vector<double>{1, 2.5, -3});
  std::istringstream array("%%MatrixMarket matrix array real general\n% c\n3 1\n1\n2\n3\n");
  CHECK(read_vector(array) == std::vector<double>{1, 2, 3});
  std::istringstream wrong("%%MatrixMarket matrix array real general\n3 1\n1\n2\n");
  CHECK_THROWS_AS(read_vector(wrong), ParseError);
  std::istringstream cols("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_vector(cols), ParseError);
  std::istringstream empty("% nothing\n");
  CHECK_THROWS_AS(read_vector(empty), ParseError);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(read_matrix_market(std::filesystem::path("/nonexistent/x.mtx")), Error); }
