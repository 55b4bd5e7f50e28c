#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghlab {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by reports and the CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what) : Error("PrecisionExhausted", what) {}
};

/// Honest indeterminacy: the data cannot be decided at the working precision.
/// Mapped to exit code 2 by the CLI.
class Indeterminate : public Error {
 public:
  explicit Indeterminate(const std::string& what) : Error("Indeterminate", what) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("SyntaxError", what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : Error("UnknownIdentifier", "unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        name_(name),
        offset_(offset) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

class DomainViolation : public Error {
 public:
  explicit DomainViolation(const std::string& what) : Error("DomainViolation", what) {}
};

class QuadratureNotConverged : public Error {
 public:
  QuadratureNotConverged(double coarse, double fine)
      : Error("QuadratureNotConverged", "quadrature not converged: coarse=" + std::to_string(coarse) +
                                            " fine=" + std::to_string(fine)),
        coarse_(coarse),
        fine_(fine) {}
  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

class RationalInsideRadius : public Error {
 public:
  RationalInsideRadius(std::vector<long> xi, const std::string& what)
      : Error("RationalInsideRadius", what), xi_(std::move(xi)) {}
  const std::vector<long>& xi() const noexcept { return xi_; }

 private:
  std::vector<long> xi_;
};

class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(const std::string& what) : Error("GridTooCoarse", what) {}
};

class InsufficientShells : public Error {
 public:
  explicit InsufficientShells(const std::string& what) : Error("InsufficientShells", what) {}
};

class DivisorBelowTol : public Error {
 public:
  DivisorBelowTol(std::vector<long> xi, double gap)
      : Error("DivisorBelowTol", "small divisor below tolerance (gap=" + std::to_string(gap) + ")"),
        xi_(std::move(xi)),
        gap_(gap) {}
  const std::vector<long>& xi() const noexcept { return xi_; }
  double gap() const noexcept { return gap_; }

 private:
  std::vector<long> xi_;
  double gap_;
};

class NoCycles : public Error {
 public:
  NoCycles() : Error("NoCycles", "manifold has no generator cycles (d = 0)") {}
};

class NotIntegral : public Error {
 public:
  explicit NotIntegral(const std::string& what) : Error("NotIntegral", what) {}
};

class WitnessRejected : public Error {
 public:
  explicit WitnessRejected(const std::string& what) : Error("WitnessRejected", what) {}
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, long line, const std::string& what)
      : Error("SchemaError", (line > 0 ? path + ":" + std::to_string(line) : path) + ": " + what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace ghlab
