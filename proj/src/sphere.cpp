#include "shapeforge/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shapeforge/error.hpp"

namespace shapeforge::sphere {

namespace {

void require_same_size(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "point counts differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
}

}  // namespace

double geodesic(std::span<const Point> a, std::span<const Point> b) {
  require_same_size(a, b);
  double chord_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point d = a[i] - b[i];
    chord_sq += dot(d, d);
  }
  const double half_chord = std::clamp(0.5 * std::sqrt(chord_sq), 0.0, 1.0);
  return 2.0 * std::asin(half_chord);
}

PointList project_tangent(std::span<const Point> base, std::span<const Point> v) {
  require_same_size(base, v);
  const double along = frobenius_dot(base, v) / frobenius_dot(base, base);
  PointList out(v.begin(), v.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= base[i] * along;
  return out;
}

PointList normalized(std::span<const Point> v) {
  const double n = frobenius_norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::degenerate_shape, "cannot normalize a zero or non-finite vector");
  }
  PointList out(v.begin(), v.end());
  for (auto& p : out) p *= 1.0 / n;
  return out;
}

PointList exp(std::span<const Point> base, std::span<const Point> v) {
  require_same_size(base, v);
  const double len = frobenius_norm(v);
  const double off = std::abs(frobenius_dot(base, v));
  if (off > kTangentTolerance * std::max(1.0, len)) {
    throw Error(ErrorKind::invalid_tangent,
                "vector is not tangent at the base point (|<v, base>| = " +
                    std::to_string(off) + ")");
  }
  PointList out(base.begin(), base.end());
  if (len == 0.0) return out;
  const double c = std::cos(len);
  const double s = std::sin(len) / len;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] * c + v[i] * s;
  return normalized(out);
}

PointList log(std::span<const Point> base, std::span<const Point> target) {
  require_same_size(base, target);
  const double c = frobenius_dot(base, target);
  PointList u(target.begin(), target.end());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] -= base[i] * c;
  // Second pass removes the residual component left by rounding.
  const double residual = frobenius_dot(base, u);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] -= base[i] * residual;
  const double s = frobenius_norm(u);
  const double theta = std::atan2(s, c);
  if (theta > std::numbers::pi - kAntipodeTolerance) {
    throw Error(ErrorKind::undefined_log, "logarithm undefined at the antipode");
  }
  if (s == 0.0) {
    std::fill(u.begin(), u.end(), Point{});
    return u;
  }
  for (auto& p : u) p *= theta / s;
  return u;
}

}  // namespace shapeforge::sphere
