#pragma once

namespace shapeforge {

/// Selects between the OpenMP kernel and the serial reference path. Both
/// produce bit-identical results; the serial path is kept for testing.
enum class Execution { serial, parallel };

}  // namespace shapeforge
