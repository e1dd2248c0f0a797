#include <algorithm>
#include <cmath>
#include <string>

#include "shapeforge/error.hpp"
#include "shapeforge/ingest.hpp"

namespace shapeforge {

DiscreteCurve resample_arclength(const RawContour& contour, std::size_t n) {
  if (n < kMinCurveSamples) {
    throw Error(ErrorKind::invalid_argument,
                "resample count must be at least " + std::to_string(kMinCurveSamples));
  }
  PointList pts;
  pts.reserve(contour.points.size());
  for (const auto& p : contour.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::validation, "contour '" + contour.id + "' has a non-finite coordinate");
    }
    if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
  }
  while (pts.size() > 1 && pts.back() == pts.front()) pts.pop_back();
  if (pts.size() < 3) {
    throw Error(ErrorKind::degenerate_contour,
                "contour '" + contour.id + "' has fewer than 3 distinct points");
  }

  const Polyline outline(pts, true);
  PointList out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = outline.at(outline.length() * static_cast<double>(j) / static_cast<double>(n));
  }
  return DiscreteCurve(std::move(out), true);
}

double solidity(std::span<const Point> polygon) {
  if (polygon.size() < 3) return 0.0;
  PointList p(polygon.begin(), polygon.end());
  std::sort(p.begin(), p.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return 0.0;
  // Andrew's monotone chain.
  PointList hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  const double hull_area = std::abs(signed_area(hull));
  if (hull_area <= 0.0) return 0.0;
  return std::abs(signed_area(polygon)) / hull_area;
}

}  // namespace shapeforge
