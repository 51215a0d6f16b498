#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/vector.hpp"

// Vector dump formats. Both begin with a one-line header holding n.
//
//   text:    "n\n" then one entry per line ("re im" for complex vectors)
//   binary:  "n\n" then n little-endian float64 values (re block, then im
//            block for complex vectors)

namespace scalesplit::io {

namespace detail {

inline std::size_t read_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("missing vector header");
  std::istringstream h(line);
  std::size_t n = 0;
  std::string extra;
  if (!(h >> n) || (h >> extra)) throw ParseError("malformed vector header: '" + line + "'");
  return n;
}

inline void write_raw(std::ostream& os, const RealVector& v) {
  static_assert(sizeof(double) == 8);
  for (double x : v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &x, 8);
    char buf[8];
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffU);
    os.write(buf, 8);
  }
}

inline RealVector read_raw(std::istream& is, std::size_t n) {
  RealVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw ParseError("truncated binary vector");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
    std::memcpy(&v[i], &bits, 8);
  }
  return v;
}

}  // namespace detail

inline void write_vector_text(std::ostream& os, const RealVector& v) {
  os << v.size() << '\n' << std::setprecision(17);
  for (double x : v) os << x << '\n';
  if (!os) throw IoError("failed writing vector");
}

inline void write_vector_text(std::ostream& os, const ComplexVector& z) {
  os << z.size() << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < z.size(); ++i) os << z.re[i] << ' ' << z.im[i] << '\n';
  if (!os) throw IoError("failed writing vector");
}

inline RealVector read_real_vector_text(std::istream& is) {
  const std::size_t n = detail::read_header(is);
  RealVector v(n);
  for (auto& x : v)
    if (!(is >> x)) throw ParseError("truncated text vector");
  return v;
}

inline ComplexVector read_complex_vector_text(std::istream& is) {
  const std::size_t n = detail::read_header(is);
  ComplexVector z(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!(is >> z.re[i] >> z.im[i])) throw ParseError("truncated complex text vector");
  return z;
}

inline void write_vector_binary(std::ostream& os, const RealVector& v) {
  os << v.size() << '\n';
  detail::write_raw(os, v);
  if (!os) throw IoError("failed writing vector");
}

inline void write_vector_binary(std::ostream& os, const ComplexVector& z) {
  os << z.size() << '\n';
  detail::write_raw(os, z.re);
  detail::write_raw(os, z.im);
  if (!os) throw IoError("failed writing vector");
}

inline RealVector read_real_vector_binary(std::istream& is) {
  const std::size_t n = detail::read_header(is);
  return detail::read_raw(is, n);
}

inline ComplexVector read_complex_vector_binary(std::istream& is) {
  const std::size_t n = detail::read_header(is);
  RealVector re = detail::read_raw(is, n);
  RealVector im = detail::read_raw(is, n);
  return ComplexVector(std::move(re), std::move(im));
}

inline void save_complex_vector(const std::filesystem::path& path, const ComplexVector& z, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  binary ? write_vector_binary(os, z) : write_vector_text(os, z);
}

inline ComplexVector load_complex_vector(const std::filesystem::path& path, bool binary = false) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open " + path.string());
  return binary ? read_complex_vector_binary(is) : read_complex_vector_text(is);
}

}  // namespace scalesplit::io
