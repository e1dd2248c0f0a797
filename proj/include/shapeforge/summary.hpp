#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shapeforge/execution.hpp"
#include "shapeforge/shape_core.hpp"

namespace shapeforge {

/// Box-plot statistics of one group. Quartiles use linear interpolation
/// between order statistics; fences sit 1.5 IQR beyond the quartiles.
struct GroupSummary {
  std::string label;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a singleton
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double lower_fence = 0.0;
  double upper_fence = 0.0;
  std::vector<std::size_t> outliers;  // indices into the group's samples
};

double quantile_sorted(std::span<const double> sorted, double p);

GroupSummary summarize(std::string label, std::span<const double> values);

struct LabeledShapes {
  std::string label;
  std::vector<PreShape> shapes;
};

struct LabeledValues {
  std::string label;
  std::vector<double> values;
};

struct DistanceReport {
  std::vector<LabeledValues> distances;
  std::vector<GroupSummary> summaries;
};

/// Summaries of precomputed per-sample distances. Every group must be nonempty.
DistanceReport distance_report(std::vector<LabeledValues> groups);

/// Shape geodesic from every sample to `reference`, summarized per group.
DistanceReport distance_report(std::span<const LabeledShapes> groups, const PreShape& reference,
                               Execution exec = Execution::parallel);

}  // namespace shapeforge
