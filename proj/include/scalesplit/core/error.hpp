#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalesplit {

// Library error hierarchy. Every error derives from std::runtime_error (or
// std::invalid_argument for precondition violations) so callers can catch
// broadly and the CLI can report a stable machine-readable kind().

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got, const std::string& where)
      : Error(where + ": dimension mismatch (expected " + std::to_string(expected) +
              ", got " + std::to_string(got) + ")") {}
  const char* kind() const noexcept override { return "DimensionMismatch"; }
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

class SymmetryViolation : public Error {
 public:
  explicit SymmetryViolation(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "SymmetryViolation"; }
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "NotPositiveDefinite"; }
};

class CgDidNotConverge : public Error {
 public:
  CgDidNotConverge(std::size_t iterations, double relres)
      : Error("conjugate gradient did not converge in " + std::to_string(iterations) +
              " iterations (relative residual " + std::to_string(relres) + ")"),
        iterations_(iterations),
        relres_(relres) {}
  const char* kind() const noexcept override { return "CgDidNotConverge"; }
  std::size_t iterations() const noexcept { return iterations_; }
  double relative_residual() const noexcept { return relres_; }

 private:
  std::size_t iterations_;
  double relres_;
};

class ZeroRightHandSide : public Error {
 public:
  ZeroRightHandSide() : Error("right-hand side has zero norm") {}
  const char* kind() const noexcept override { return "ZeroRightHandSide"; }
};

class OracleCapExceeded : public Error {
 public:
  OracleCapExceeded(std::size_t n, std::size_t cap)
      : Error("dense oracle order " + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
              "; use a smaller problem"),
        n_(n),
        cap_(cap) {}
  const char* kind() const noexcept override { return "OracleCapExceeded"; }
  std::size_t order() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t n_;
  std::size_t cap_;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "SingularMatrix"; }
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "IoError"; }
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "ParseError"; }
};

class AllGridPointsFailed : public Error {
 public:
  AllGridPointsFailed() : Error("no grid point converged") {}
  const char* kind() const noexcept override { return "AllGridPointsFailed"; }
};

}  // namespace scalesplit
