#include "shapeforge/geometry.hpp"

#include <algorithm>

namespace shapeforge {

double frobenius_dot(std::span<const Point> a, std::span<const Point> b) {
  double sum = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) sum += dot(a[i], b[i]);
  return sum;
}

double frobenius_norm(std::span<const Point> a) {
  // Scaled accumulation; avoids overflow for pixel-unit inputs.
  double scale = 0.0;
  double ssq = 1.0;
  for (const auto& p : a) {
    for (double v : {p.x, p.y}) {
      if (v == 0.0) continue;
      const double av = std::abs(v);
      if (scale < av) {
        ssq = 1.0 + ssq * (scale / av) * (scale / av);
        scale = av;
      } else {
        ssq += (av / scale) * (av / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double signed_area(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  // Shift to the first vertex to limit cancellation on offset inputs.
  const Point o = polygon[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    twice += cross(polygon[i] - o, polygon[i + 1] - o);
  }
  return 0.5 * twice;
}

double closed_perimeter(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += norm(polygon[(i + 1) % n] - polygon[i]);
  return total;
}

Polyline::Polyline(std::span<const Point> vertices, bool closed)
    : vertices_(vertices.begin(), vertices.end()), closed_(closed) {
  const std::size_t n = vertices_.size();
  const std::size_t segs = n == 0 ? 0 : (closed ? n : n - 1);
  cumulative_.assign(segs + 1, 0.0);
  for (std::size_t i = 0; i < segs; ++i) {
    cumulative_[i + 1] = cumulative_[i] + norm(vertices_[(i + 1) % n] - vertices_[i]);
  }
}

Point Polyline::at(double s) const {
  const double total = length();
  if (vertices_.empty()) return {};
  if (!(total > 0.0)) return vertices_.front();
  if (closed_) {
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
  } else {
    s = std::clamp(s, 0.0, total);
  }
  // Last segment whose start is at or before s.
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, s);
  const std::size_t seg = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cumulative_.begin() - 1));
  const double len = cumulative_[seg + 1] - cumulative_[seg];
  const double frac = len > 0.0 ? (s - cumulative_[seg]) / len : 0.0;
  const Point& a = vertices_[seg];
  const Point& b = vertices_[(seg + 1) % vertices_.size()];
  return frac == 0.0 ? a : a + (b - a) * frac;
}

}  // namespace shapeforge
