#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shapeforge/geometry.hpp"
#include "shapeforge/shape_core.hpp"

namespace shapeforge {

/// Principal geodesic analysis in the tangent space at `base`.
///
/// Components are unit, mutually orthogonal, sorted by variance and signed so
/// their largest-magnitude coordinate is positive. Scores are the plain
/// projections <v_j, e_c> of each tangent vector, which puts the base point
/// itself at the origin.
struct PgaModel {
  PointList base;
  std::vector<PointList> components;
  std::vector<double> variances;
  /// scores[sample][component]
  std::vector<std::vector<double>> scores;
  /// Sample mean of the tangent vectors.
  PointList mean;
  /// Trace of the tangent sample covariance.
  double total_variance = 0.0;
  std::vector<std::string> warnings;

  /// Tangent vector implied by a row of scores: mean + sum (s_c - <mean, e_c>) e_c.
  PointList reconstruct(std::span<const double> sample_scores) const;

  /// variances / total_variance.
  std::vector<double> explained_fraction() const;
};

/// PGA of tangent vectors already expressed at `base`. Requested components
/// beyond the numerical rank are dropped and a warning is recorded.
PgaModel pga_from_tangents(PointList base, std::span<const PointList> tangents,
                           std::size_t n_components);

/// PGA of pre-shapes through their Procrustes tangent projections at `base`.
PgaModel pga(std::span<const PreShape> shapes, const PreShape& base, std::size_t n_components);

}  // namespace shapeforge
