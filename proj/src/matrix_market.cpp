#include "krylov/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace krylov {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank_or_comment(const std::string& line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '%' || line[p] == '#';
}

long long parse_index(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + tok + "'", line_no);
  }
  if (used != tok.size()) throw ParseError("expected an integer, got '" + tok + "'", line_no);
  return v;
}

double parse_value(const std::string& tok, std::size_t line_no) {
  try {
    return parse_real<double>(tok);
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a real value, got '" + tok + "'", line_no);
  }
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

SparseMatrix<double> read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++line_no;
  std::istringstream header(lower(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix")
    throw ParseError("missing %%MatrixMarket matrix banner", line_no);
  if (format != "coordinate") throw ParseError("only coordinate format is supported", line_no);
  if (field != "real") throw ParseError("unsupported field '" + field + "' (need real)", line_no);
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
  const bool symmetric = symmetry == "symmetric";

  long long rows = -1, cols = -1, entries = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string a, b, c, extra;
    if (!(ss >> a >> b >> c) || (ss >> extra))
      throw ParseError("size line must hold rows, columns and entry count", line_no);
    rows = parse_index(a, line_no);
    cols = parse_index(b, line_no);
    entries = parse_index(c, line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows <= 0 || cols <= 0 || entries < 0) throw ParseError("invalid matrix dimensions", line_no);
  if (symmetric && rows != cols) throw ParseError("symmetric matrix must be square", line_no);

  std::vector<Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(entries) * (symmetric ? 2 : 1));
  long long read = 0;
  while (read < entries && std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string ti, tj, tv, extra;
    if (!(ss >> ti >> tj >> tv) || (ss >> extra))
      throw ParseError("entry line must hold row, column and value", line_no);
    const long long i = parse_index(ti, line_no);
    const long long j = parse_index(tj, line_no);
    const double v = parse_value(tv, line_no);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("index (" + ti + ", " + tj + ") out of range", line_no);
    const auto r = static_cast<std::size_t>(i - 1);
    const auto c = static_cast<std::size_t>(j - 1);
    triplets.push_back({r, c, v});
    if (symmetric && r != c) triplets.push_back({c, r, v});
    ++read;
  }
  if (read != entries)
    throw ParseError("expected " + std::to_string(entries) + " entries, found " + std::to_string(read),
                     line_no);
  return SparseMatrix<double>::from_triplets(static_cast<std::size_t>(rows),
                                             static_cast<std::size_t>(cols), std::move(triplets));
}

SparseMatrix<double> read_matrix_market(const std::filesystem::path& path) {
  auto in = open(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix<double>& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.n_rows() << ' ' << m.n_cols() << ' ' << m.nnz() << '\n';
  const auto rp = m.row_ptr();
  const auto cols = m.cols();
  const auto vals = m.values();
  char buf[40];
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", vals[p]);
      out << r + 1 << ' ' << cols[p] + 1 << ' ' << buf << '\n';
    }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix<double>& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix_market(out, m);
}

std::vector<double> read_vector(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> v;
  bool array_header = false;
  bool size_seen = false;
  long long expected = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && lower(line).rfind("%%matrixmarket", 0) == 0) {
      const auto h = lower(line);
      if (h.find("array") == std::string::npos || h.find("real") == std::string::npos)
        throw ParseError("vector file must be a real array", line_no);
      array_header = true;
      continue;
    }
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    if (array_header && !size_seen) {
      std::string a, b;
      if (!(ss >> a >> b)) throw ParseError("array size line must hold rows and columns", line_no);
      expected = parse_index(a, line_no);
      if (parse_index(b, line_no) != 1) throw ParseError("vector file must have one column", line_no);
      size_seen = true;
      continue;
    }
    std::string tok;
    while (ss >> tok) v.push_back(parse_value(tok, line_no));
  }
  if (array_header && expected != static_cast<long long>(v.size()))
    throw ParseError("array declares " + std::to_string(expected) + " values, found " +
                         std::to_string(v.size()),
                     line_no);
  if (v.empty()) throw ParseError("no values found", line_no);
  return v;
}

std::vector<double> read_vector(const std::filesystem::path& path) {
  auto in = open(path);
  return read_vector(in);
}

}  // namespace krylov
