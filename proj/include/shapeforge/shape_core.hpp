#pragma once

#include <cstddef>
#include <span>

#include "shapeforge/geometry.hpp"

namespace shapeforge {

/// Centroid sizes at or below this are treated as degenerate.
inline constexpr double kMinCentroidSize = 1e-9;

/// k landmark points in the plane, k >= 3, all coordinates finite.
/// Coincident points are allowed here and rejected by to_preshape.
class Configuration {
 public:
  explicit Configuration(PointList points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  PointList points_;
};

/// A centered, unit Frobenius-norm configuration: a point on the pre-shape
/// hypersphere. Only constructible through validated paths.
class PreShape {
 public:
  /// Validates centering and unit norm (tolerance `tol`) without modifying
  /// the points.
  static PreShape from_points(PointList points, double tol = 1e-10);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  explicit PreShape(PointList points) : points_(std::move(points)) {}
  friend PreShape to_preshape(const Configuration&);
  friend class PreShapeAccess;

  PointList points_;
};

/// Element of SO(2). Acts on row vectors from the right, p * Gamma, so
/// from_angle(theta) rotates points counterclockwise by theta.
class Rotation2 {
 public:
  Rotation2() = default;

  static Rotation2 identity() { return {}; }
  static Rotation2 from_angle(double theta);
  /// Normalizes (c, s); a zero vector gives the identity.
  static Rotation2 from_cos_sin(double c, double s);

  double angle() const;
  const Mat2& matrix() const { return m_; }
  Rotation2 inverse() const;

  Point apply(const Point& p) const { return p * m_; }
  PointList apply(std::span<const Point> points) const;

 private:
  Mat2 m_ = Mat2::identity();
};

/// A tangent vector at a pre-shape, orthogonal to it.
class TangentVector {
 public:
  /// Validates orthogonality to `base` (|<v, base>| <= tol).
  static TangentVector make(PreShape base, PointList components, double tol = 1e-10);

  const PreShape& base() const { return base_; }
  std::span<const Point> components() const { return components_; }
  double norm() const { return frobenius_norm(components_); }

 private:
  TangentVector(PreShape base, PointList components)
      : base_(std::move(base)), components_(std::move(components)) {}
  friend class PreShapeAccess;

  PreShape base_;
  PointList components_;
};

/// Signed SVD of a 2 x 2 matrix: M = left * diag(s1, s2) * right^T with
/// left, right in SO(2) and s1 >= |s2|. s2 is negative iff det(M) < 0, which
/// is the determinant-corrected decomposition used by Procrustes alignment.
struct SignedSvd2 {
  Mat2 left;
  Mat2 right;
  double s1 = 0.0;
  double s2 = 0.0;
};

SignedSvd2 signed_svd(const Mat2& m);

/// Z_b^T Z_a for two equally sized point lists.
Mat2 cross_covariance(std::span<const Point> a, std::span<const Point> b);

Configuration center(const Configuration& config);
double centroid_size(const Configuration& config);
PreShape to_preshape(const Configuration& config);

double frobenius_inner(const PreShape& a, const PreShape& b);
double preshape_geodesic(const PreShape& a, const PreShape& b);

/// The proper rotation Gamma minimizing |Z_a - Z_b Gamma|.
Rotation2 optimal_rotation(const PreShape& a, const PreShape& b);

/// min over SO(2) of |Z_a - Z_b Gamma|, evaluated as the residual norm at the
/// optimal rotation.
double partial_procrustes_distance(const PreShape& a, const PreShape& b);

/// sqrt(2) * sqrt(1 - (s1 + s2)) with the signed singular values of Z_b^T Z_a.
/// Same value as partial_procrustes_distance; loses precision near zero.
double partial_procrustes_distance_closed_form(const PreShape& a, const PreShape& b);

/// Geodesic distance in shape space (pre-shapes modulo rotation), in [0, pi/2].
double shape_geodesic(const PreShape& a, const PreShape& b);

PreShape rotate(const PreShape& z, const Rotation2& r);

PreShape exp_map(const PreShape& base, const TangentVector& v);
TangentVector log_map(const PreShape& base, const PreShape& target);

/// Horizontal (Procrustes) tangent coordinates of `target` at `base`:
/// Z_target Gamma - cos(rho) Z_base. Its norm is sin of the shape geodesic.
TangentVector procrustes_tangent_project(const PreShape& base, const PreShape& target);

/// Log map of the optimally rotated target; the same direction as the
/// Procrustes projection but with length equal to the shape geodesic.
TangentVector horizontal_log(const PreShape& base, const PreShape& target);

/// k points equally spaced on the unit circle, as a pre-shape.
PreShape circle_preshape(std::size_t k);

}  // namespace shapeforge
