#include "shapeforge/error.hpp"

namespace shapeforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_configuration: return "invalid-configuration";
    case ErrorKind::degenerate_shape: return "degenerate-shape";
    case ErrorKind::dimension_mismatch: return "dimension";
    case ErrorKind::invalid_tangent: return "invalid-tangent";
    case ErrorKind::undefined_log: return "undefined-log";
    case ErrorKind::degenerate_curve: return "degenerate-curve";
    case ErrorKind::degenerate_contour: return "degenerate-contour";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::invalid_argument: return "argument";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace shapeforge
