#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramanujan {

enum class ErrorKind {
  ZeroInverse,
  SpecMismatch,
  DivisionByZeroPoly,
  NonUnit,
  TraceZero,
  ZeroU,
  NormNotOne,
  DegenerateD2,
  NotCharPower,
  NotInvertible,
  NoSuitableAlpha,
  NonUnitDenominator,
  UnsupportedParams,
  SingularMatrix,
  CapExceeded,
  InconsistentColoring,
  DenseCapExceeded,
  NonCommutingOperators,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` is the
/// stable, machine-checkable part and `what()` carries context.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ramanujan
