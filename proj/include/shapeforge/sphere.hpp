#pragma once

#include <span>

#include "shapeforge/geometry.hpp"

/// Geometry of the unit hypersphere in R^(2k), with points stored as k planar
/// rows. Pre-shapes and scale-normalized SRVFs both live here.
namespace shapeforge::sphere {

/// Cut-locus margin: logarithms are refused once the arc exceeds pi minus this.
inline constexpr double kAntipodeTolerance = 1e-6;

/// Relative tolerance for accepting a vector as tangent at a base point.
inline constexpr double kTangentTolerance = 1e-8;

/// Arc length between two unit vectors. Evaluated as 2 asin(|a - b| / 2),
/// which equals arccos<a, b> but keeps full precision near zero.
double geodesic(std::span<const Point> a, std::span<const Point> b);

/// Spherical exponential. `v` must be orthogonal to `base`.
PointList exp(std::span<const Point> base, std::span<const Point> v);

/// Spherical logarithm; throws ErrorKind::undefined_log within
/// kAntipodeTolerance of the antipode.
PointList log(std::span<const Point> base, std::span<const Point> target);

/// Removes the component of `v` along `base`.
PointList project_tangent(std::span<const Point> base, std::span<const Point> v);

/// Scales `v` to unit Frobenius norm. Throws degenerate_shape for a zero vector.
PointList normalized(std::span<const Point> v);

}  // namespace shapeforge::sphere
