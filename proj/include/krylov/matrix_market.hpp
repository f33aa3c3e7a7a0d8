#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "krylov/sparse_matrix.hpp"

namespace krylov {

/// Reads `%%MatrixMarket matrix coordinate real general|symmetric`.
/// Symmetric files are expanded to full storage, indices converted to
/// 0-based, duplicate entries summed. Throws ParseError naming the line.
SparseMatrix<double> read_matrix_market(std::istream& in);
SparseMatrix<double> read_matrix_market(const std::filesystem::path& path);

/// Writes general coordinate format with 17 significant digits, which
/// round-trips binary64 values exactly.
void write_matrix_market(std::ostream& out, const SparseMatrix<double>& m);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix<double>& m);

/// Reads a dense vector: either a Matrix Market `array real general` file
/// with one column, or whitespace-separated numbers (lines starting with
/// '%' or '#' are skipped).
std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector(const std::filesystem::path& path);

}  // namespace krylov
