#pragma once

#include <string>
#include <vector>

#include "shapeforge/geometry.hpp"

namespace shapeforge::cli::svg {

struct Series {
  std::string label;
  PointList points;
};

std::string escape(std::string_view text);

/// Scatter plot, one color per series, with a cross marking the origin.
std::string scatter(const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label);

/// Closed outlines drawn over each other.
std::string overlay(const std::vector<Series>& outlines, const std::string& title);

/// Individuals chart: phase-1 and phase-2 points, center line and limits;
/// flagged points drawn in red.
std::string control_chart(const std::vector<double>& values, std::size_t phase1_count,
                          double center, double lower, double upper,
                          const std::vector<bool>& flagged, const std::string& title);

struct Box {
  std::string label;
  double min, q1, median, q3, max, lower_fence, upper_fence;
  std::vector<double> outliers;
};

std::string boxplot(const std::vector<Box>& boxes, const std::string& title, const std::string& y_label);

}  // namespace shapeforge::cli::svg
