#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shapeforge {

/// d2 constant for moving ranges of span 2.
inline constexpr double kMovingRangeD2 = 1.128;
inline constexpr std::size_t kMinPhase1 = 20;

/// Shewhart individuals chart. Limits come from phase 1 as
/// mean +/- 3 * (average moving range / d2); phase-2 points strictly outside
/// the limits are flagged.
struct ControlChart {
  std::vector<double> phase1;
  std::vector<double> phase2;
  double center = 0.0;
  double average_moving_range = 0.0;
  double sigma = 0.0;
  double upper_limit = 0.0;
  double lower_limit = 0.0;
  std::vector<bool> out_of_control;  // one per phase-2 point

  std::size_t signal_count() const;
};

ControlChart control_chart(std::span<const double> phase1, std::span<const double> phase2);

}  // namespace shapeforge
