#pragma once

// Internal helpers shared by translation units; not installed.

#include "shapeforge/shape_core.hpp"

namespace shapeforge {

class PreShapeAccess {
 public:
  static PreShape unchecked(PointList points) { return PreShape(std::move(points)); }
  static TangentVector unchecked_tangent(PreShape base, PointList components) {
    return TangentVector(std::move(base), std::move(components));
  }
};

}  // namespace shapeforge
