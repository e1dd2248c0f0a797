#include "shapeforge/summary.hpp"

#include <algorithm>
#include <cmath>

#include "shapeforge/error.hpp"
#include "shapeforge/kernels.hpp"

namespace shapeforge {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorKind::invalid_argument, "quantile of an empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

GroupSummary summarize(std::string label, std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorKind::invalid_argument, "group '" + label + "' is empty");
  }
  GroupSummary s;
  s.label = std::move(label);
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  s.lower_fence = s.q1 - 1.5 * iqr;
  s.upper_fence = s.q3 + 1.5 * iqr;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < s.lower_fence || values[i] > s.upper_fence) s.outliers.push_back(i);
  }
  return s;
}

DistanceReport distance_report(std::vector<LabeledValues> groups) {
  DistanceReport report;
  for (const auto& g : groups) report.summaries.push_back(summarize(g.label, g.values));
  report.distances = std::move(groups);
  return report;
}

DistanceReport distance_report(std::span<const LabeledShapes> groups, const PreShape& reference,
                               Execution exec) {
  std::vector<LabeledValues> values;
  for (const auto& g : groups) {
    if (g.shapes.empty()) {
      throw Error(ErrorKind::invalid_argument, "group '" + g.label + "' is empty");
    }
    values.push_back({g.label, distances_to(g.shapes, reference, exec)});
  }
  return distance_report(std::move(values));
}

}  // namespace shapeforge
