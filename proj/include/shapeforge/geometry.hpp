#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace shapeforge {

/// A planar point or vector. Configurations are stored as rows of these,
/// i.e. a k x 2 matrix in row-major order.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
  constexpr Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Point& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Point operator+(Point a, const Point& b) { return a += b; }
  friend constexpr Point operator-(Point a, const Point& b) { return a -= b; }
  friend constexpr Point operator-(const Point& a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(Point a, double s) { return a *= s; }
  friend constexpr Point operator*(double s, Point a) { return a *= s; }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

using PointList = std::vector<Point>;

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }

/// 2 x 2 matrix, row-major: {m00, m01, m10, m11}.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  constexpr double det() const { return m00 * m11 - m01 * m10; }
  constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }

  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
};

/// Row vector times matrix, p * M. This matches the X * Gamma convention used
/// for configurations throughout the library.
constexpr Point operator*(const Point& p, const Mat2& m) {
  return {p.x * m.m00 + p.y * m.m10, p.x * m.m01 + p.y * m.m11};
}

// Flat views over point lists.

double frobenius_dot(std::span<const Point> a, std::span<const Point> b);
double frobenius_norm(std::span<const Point> a);

/// Shoelace signed area of the closed polygon; positive for counterclockwise
/// order in a y-up frame.
double signed_area(std::span<const Point> polygon);

/// Perimeter of the closed polygon (last vertex joined back to the first).
double closed_perimeter(std::span<const Point> polygon);

/// Arc-length parameterization of a polyline. A closed polyline joins its
/// last vertex back to the first and is periodic in s with period length().
class Polyline {
 public:
  Polyline(std::span<const Point> vertices, bool closed);

  double length() const { return cumulative_.back(); }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return cumulative_.size() - 1; }
  /// Arc length from vertex 0 to vertex i.
  double position(std::size_t i) const { return cumulative_[i]; }

  /// Point at arc length s: wrapped for closed polylines, clamped for open ones.
  /// Exactly reproduces vertex i at s = position(i).
  Point at(double s) const;

 private:
  PointList vertices_;
  bool closed_;
  std::vector<double> cumulative_;
};

}  // namespace shapeforge
