#include "shapeforge/shape_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/sphere.hpp"

namespace shapeforge {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::dimension_mismatch,
                "landmark counts differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Point column_mean(std::span<const Point> pts) {
  Point sum;
  for (const auto& p : pts) sum += p;
  return sum * (1.0 / static_cast<double>(pts.size()));
}

PointList centered(std::span<const Point> pts) {
  PointList out(pts.begin(), pts.end());
  // Two passes: the second removes the rounding left in the first mean.
  for (int pass = 0; pass < 2; ++pass) {
    const Point m = column_mean(out);
    for (auto& p : out) p -= m;
  }
  return out;
}

}  // namespace

Configuration::Configuration(PointList points) : points_(std::move(points)) {
  if (points_.size() < 3) {
    throw Error(ErrorKind::invalid_configuration,
                "configuration needs at least 3 landmarks, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw Error(ErrorKind::invalid_configuration,
                  "non-finite coordinate at landmark " + std::to_string(i));
    }
  }
}

PreShape PreShape::from_points(PointList points, double tol) {
  const Configuration config(points);  // k >= 3, finite
  const Point m = column_mean(points);
  if (std::abs(m.x) > tol || std::abs(m.y) > tol) {
    throw Error(ErrorKind::degenerate_shape, "pre-shape is not centered");
  }
  if (std::abs(frobenius_norm(points) - 1.0) > tol) {
    throw Error(ErrorKind::degenerate_shape, "pre-shape does not have unit norm");
  }
  return PreShape(std::move(points));
}

Rotation2 Rotation2::from_angle(double theta) {
  Rotation2 r;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r.m_ = {c, s, -s, c};
  return r;
}

Rotation2 Rotation2::from_cos_sin(double c, double s) {
  const double len = std::hypot(c, s);
  if (!(len > 0.0)) return identity();
  Rotation2 r;
  r.m_ = {c / len, s / len, -s / len, c / len};
  return r;
}

double Rotation2::angle() const { return std::atan2(m_.m01, m_.m00); }

Rotation2 Rotation2::inverse() const {
  Rotation2 r;
  r.m_ = m_.transposed();
  return r;
}

PointList Rotation2::apply(std::span<const Point> points) const {
  PointList out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p * m_);
  return out;
}

TangentVector TangentVector::make(PreShape base, PointList components, double tol) {
  require_same_size(base.size(), components.size());
  const double off = std::abs(frobenius_dot(base.points(), components));
  if (off > tol) {
    throw Error(ErrorKind::invalid_tangent,
                "components are not orthogonal to the base (|<v, base>| = " +
                    std::to_string(off) + ")");
  }
  return TangentVector(std::move(base), std::move(components));
}

SignedSvd2 signed_svd(const Mat2& m) {
  const double e = 0.5 * (m.m00 + m.m11);
  const double f = 0.5 * (m.m00 - m.m11);
  const double g = 0.5 * (m.m10 + m.m01);
  const double h = 0.5 * (m.m10 - m.m01);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);

  // Column-vector rotation by angle t: [[cos, -sin], [sin, cos]].
  auto rot = [](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return Mat2{c, -s, s, c};
  };
  SignedSvd2 out;
  out.left = rot(phi);
  out.right = rot(-theta);
  out.s1 = q + r;
  out.s2 = q - r;
  return out;
}

Mat2 cross_covariance(std::span<const Point> a, std::span<const Point> b) {
  require_same_size(a.size(), b.size());
  Mat2 m{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    m.m00 += b[i].x * a[i].x;
    m.m01 += b[i].x * a[i].y;
    m.m10 += b[i].y * a[i].x;
    m.m11 += b[i].y * a[i].y;
  }
  return m;
}

Configuration center(const Configuration& config) {
  return Configuration(centered(config.points()));
}

double centroid_size(const Configuration& config) {
  return frobenius_norm(centered(config.points()));
}

PreShape to_preshape(const Configuration& config) {
  PointList pts = centered(config.points());
  const double size = frobenius_norm(pts);
  if (!(size > kMinCentroidSize)) {
    throw Error(ErrorKind::degenerate_shape,
                "centroid size " + std::to_string(size) + " is below the degeneracy threshold");
  }
  for (auto& p : pts) p *= 1.0 / size;
  return PreShape(centered(pts));
}

double frobenius_inner(const PreShape& a, const PreShape& b) {
  require_same_size(a.size(), b.size());
  return std::clamp(frobenius_dot(a.points(), b.points()), -1.0, 1.0);
}

double preshape_geodesic(const PreShape& a, const PreShape& b) {
  require_same_size(a.size(), b.size());
  return sphere::geodesic(a.points(), b.points());
}

Rotation2 optimal_rotation(const PreShape& a, const PreShape& b) {
  const Mat2 m = cross_covariance(a.points(), b.points());
  const SignedSvd2 svd = signed_svd(m);
  // Z_b^T Z_a = V diag U^T; the minimizer of |Z_a - Z_b Gamma| is V U^T.
  const Mat2 gamma = svd.left * svd.right.transposed();
  return Rotation2::from_cos_sin(gamma.m00, gamma.m01);
}

double partial_procrustes_distance(const PreShape& a, const PreShape& b) {
  const Rotation2 r = optimal_rotation(a, b);
  double sq = 0.0;
  const auto pa = a.points();
  const auto pb = b.points();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const Point d = pa[i] - r.apply(pb[i]);
    sq += dot(d, d);
  }
  return std::clamp(std::sqrt(sq), 0.0, 2.0);
}

double partial_procrustes_distance_closed_form(const PreShape& a, const PreShape& b) {
  const SignedSvd2 svd = signed_svd(cross_covariance(a.points(), b.points()));
  return std::numbers::sqrt2 * std::sqrt(std::max(0.0, 1.0 - (svd.s1 + svd.s2)));
}

double shape_geodesic(const PreShape& a, const PreShape& b) {
  const double dp = partial_procrustes_distance(a, b);
  return 2.0 * std::asin(std::clamp(0.5 * dp, 0.0, 1.0));
}

PreShape rotate(const PreShape& z, const Rotation2& r) {
  return PreShape::from_points(r.apply(z.points()), 1e-9);
}

PreShape exp_map(const PreShape& base, const TangentVector& v) {
  require_same_size(base.size(), v.components().size());
  const Point m = column_mean(v.components());
  if (std::hypot(m.x, m.y) > sphere::kTangentTolerance * std::max(1.0, v.norm())) {
    throw Error(ErrorKind::invalid_tangent, "tangent vector is not centered");
  }
  return PreShapeAccess::unchecked(centered(sphere::exp(base.points(), v.components())));
}

TangentVector log_map(const PreShape& base, const PreShape& target) {
  require_same_size(base.size(), target.size());
  return PreShapeAccess::unchecked_tangent(base, sphere::log(base.points(), target.points()));
}

TangentVector procrustes_tangent_project(const PreShape& base, const PreShape& target) {
  const Rotation2 r = optimal_rotation(base, target);
  PointList v = r.apply(target.points());
  const double c = frobenius_dot(base.points(), v);
  const auto pb = base.points();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= pb[i] * c;
  return PreShapeAccess::unchecked_tangent(base, std::move(v));
}

TangentVector horizontal_log(const PreShape& base, const PreShape& target) {
  const Rotation2 r = optimal_rotation(base, target);
  const PointList aligned = r.apply(target.points());
  return PreShapeAccess::unchecked_tangent(base, sphere::log(base.points(), aligned));
}

PreShape circle_preshape(std::size_t k) {
  PointList pts(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
    pts[i] = {std::cos(t), std::sin(t)};
  }
  return to_preshape(Configuration(std::move(pts)));
}

}  // namespace shapeforge
