#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"

namespace scalesplit::io {

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace detail

/// Writes the lower triangle as a "coordinate real symmetric" Matrix Market
/// file. Values use 17 significant digits so a read reproduces them exactly.
inline void write_matrix_market(std::ostream& os, const SparseSymMatrix& a) {
  std::size_t lower_nnz = 0;
  for (const auto& t : a.triplets())
    if (t.row >= t.col) ++lower_nnz;
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << a.size() << ' ' << a.size() << ' ' << lower_nnz << '\n';
  os << std::setprecision(17);
  for (const auto& t : a.triplets())
    if (t.row >= t.col) os << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
  if (!os) throw IoError("failed writing Matrix Market stream");
}

inline void write_matrix_market(const std::filesystem::path& path, const SparseSymMatrix& a) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix_market(os, a);
}

/// Reads a square coordinate Matrix Market file (real, integer or pattern;
/// symmetric or general). Symmetric files are mirrored; general files must
/// already be symmetric or SymmetryViolation is thrown.
inline SparseSymMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty Matrix Market stream");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner");
  object = detail::lower(object);
  format = detail::lower(format);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (object != "matrix" || format != "coordinate")
    throw ParseError("only 'matrix coordinate' Matrix Market files are supported");
  if (field != "real" && field != "integer" && field != "pattern" && field != "double")
    throw ParseError("unsupported Matrix Market field '" + field + "'");
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'");
  const bool pattern = field == "pattern";

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%' && line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::size_t rows = 0, cols = 0, entries = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> entries)) throw ParseError("malformed size line: '" + line + "'");
  }
  if (rows != cols) throw ParseError("matrix is not square");

  std::map<std::pair<std::size_t, std::size_t>, double> seen;
  std::vector<Triplet> triplets;
  triplets.reserve(symmetric ? 2 * entries : entries);
  for (std::size_t k = 0; k < entries; ++k) {
    if (!std::getline(is, line)) throw ParseError("unexpected end of file after " + std::to_string(k) + " entries");
    if (line.empty() || line[0] == '%') {
      --k;
      continue;
    }
    std::istringstream entry(line);
    std::size_t i = 0, j = 0;
    double v = 1.0;
    if (!(entry >> i >> j) || (!pattern && !(entry >> v)))
      throw ParseError("malformed entry line: '" + line + "'");
    if (i == 0 || j == 0 || i > rows || j > cols) throw ParseError("entry index out of range: '" + line + "'");
    --i;
    --j;
    if (symmetric) {
      const auto key = std::minmax(i, j);
      const auto it = seen.find(key);
      if (it != seen.end()) {
        if (std::abs(it->second - v) > SparseSymMatrix::kSymmetryTolerance * std::max(1.0, std::abs(v)))
          throw SymmetryViolation("conflicting values for entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")");
        continue;
      }
      seen.emplace(key, v);
      triplets.push_back({i, j, v});
      if (i != j) triplets.push_back({j, i, v});
    } else {
      triplets.push_back({i, j, v});
    }
  }
  return SparseSymMatrix::from_triplets(rows, std::move(triplets));
}

inline SparseSymMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return read_matrix_market(is);
}

}  // namespace scalesplit::io
