#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shapeforge {

enum class ErrorKind {
  invalid_configuration,
  degenerate_shape,
  dimension_mismatch,
  invalid_tangent,
  undefined_log,
  degenerate_curve,
  degenerate_contour,
  convergence,
  invalid_argument,
  parse,
  validation,
  io,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is
/// stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shapeforge
