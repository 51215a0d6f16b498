#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "scalesplit/core/error.hpp"

namespace scalesplit {

using RealVector = std::vector<double>;

/// z = re + i*im, stored as two real arrays of equal length.
struct ComplexVector {
  RealVector re;
  RealVector im;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  ComplexVector(RealVector real, RealVector imag) : re(std::move(real)), im(std::move(imag)) {
    if (re.size() != im.size()) throw DimensionMismatch(re.size(), im.size(), "ComplexVector");
  }

  std::size_t size() const noexcept { return re.size(); }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;
};

inline void check_size(std::size_t expected, std::size_t got, const char* where) {
  if (expected != got) throw DimensionMismatch(expected, got, where);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  check_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm2(const ComplexVector& z) { return std::sqrt(dot(z.re, z.re) + dot(z.im, z.im)); }

// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_size(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline RealVector scaled(double a, std::span<const double> x) {
  RealVector out(x.begin(), x.end());
  for (double& v : out) v *= a;
  return out;
}

inline ComplexVector scaled(double a, const ComplexVector& z) {
  return ComplexVector(scaled(a, z.re), scaled(a, z.im));
}

inline RealVector ones(std::size_t n) { return RealVector(n, 1.0); }

}  // namespace scalesplit
