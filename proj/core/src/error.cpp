#include "ramanujan/error.hpp"

namespace ramanujan {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::TraceZero: return "TraceZero";
    case ErrorKind::ZeroU: return "ZeroU";
    case ErrorKind::NormNotOne: return "NormNotOne";
    case ErrorKind::DegenerateD2: return "DegenerateD2";
    case ErrorKind::NotCharPower: return "NotCharPower";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NoSuitableAlpha: return "NoSuitableAlpha";
    case ErrorKind::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorKind::UnsupportedParams: return "UnsupportedParams";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InconsistentColoring: return "InconsistentColoring";
    case ErrorKind::DenseCapExceeded: return "DenseCapExceeded";
    case ErrorKind::NonCommutingOperators: return "NonCommutingOperators";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ramanujan
