#include "splithalf/errors.hpp"

namespace splithalf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainViolation:
    case ErrorKind::ShapeError:
    case ErrorKind::TooSmall:
    case ErrorKind::Unsupported:
    case ErrorKind::RangeError:
      return true;
    default:
      return false;
  }
}

}  // namespace splithalf
