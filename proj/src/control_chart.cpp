#include "shapeforge/control_chart.hpp"

#include <cmath>
#include <string>

#include "shapeforge/error.hpp"

namespace shapeforge {

std::size_t ControlChart::signal_count() const {
  std::size_t n = 0;
  for (bool f : out_of_control) n += f ? 1 : 0;
  return n;
}

ControlChart control_chart(std::span<const double> phase1, std::span<const double> phase2) {
  if (phase1.size() < kMinPhase1) {
    throw Error(ErrorKind::invalid_argument, "phase 1 needs at least " + std::to_string(kMinPhase1) +
                                                 " points, got " + std::to_string(phase1.size()));
  }
  ControlChart chart;
  chart.phase1.assign(phase1.begin(), phase1.end());
  chart.phase2.assign(phase2.begin(), phase2.end());

  double sum = 0.0;
  for (double v : phase1) sum += v;
  chart.center = sum / static_cast<double>(phase1.size());

  double mr = 0.0;
  for (std::size_t i = 1; i < phase1.size(); ++i) mr += std::abs(phase1[i] - phase1[i - 1]);
  chart.average_moving_range = mr / static_cast<double>(phase1.size() - 1);
  chart.sigma = chart.average_moving_range / kMovingRangeD2;
  chart.upper_limit = chart.center + 3.0 * chart.sigma;
  chart.lower_limit = chart.center - 3.0 * chart.sigma;

  chart.out_of_control.reserve(phase2.size());
  for (double v : phase2) {
    chart.out_of_control.push_back(v > chart.upper_limit || v < chart.lower_limit);
  }
  return chart;
}

}  // namespace shapeforge
