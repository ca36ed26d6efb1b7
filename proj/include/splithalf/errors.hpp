#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splithalf {

enum class ErrorKind {
  DomainViolation,
  ShapeError,
  TooSmall,
  Unsupported,
  RangeError,
  ZeroVariance,
  Degenerate,
  SingularMatrix,
};

std::string_view to_string(ErrorKind kind);

/// Input-side problems (bad files, bad parameters) as opposed to
/// degenerate mathematics on otherwise valid input.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace splithalf
