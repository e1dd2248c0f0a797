#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapeforge/elastic.hpp"
#include "shapeforge/execution.hpp"
#include "shapeforge/shape_core.hpp"

namespace shapeforge {

/// Dense symmetric matrix with zero diagonal, row-major.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// Pairwise shape geodesics.
DistanceMatrix distance_matrix(std::span<const PreShape> shapes,
                               Execution exec = Execution::parallel);

/// Pairwise elastic distances between normalized SRVFs. The pair loop is the
/// parallel dimension; each pair runs its own seed search serially.
DistanceMatrix distance_matrix(std::span<const SrvfCurve> curves, const ElasticOptions& options = {},
                               Execution exec = Execution::parallel);

std::vector<double> distances_to(std::span<const PreShape> shapes, const PreShape& reference,
                                 Execution exec = Execution::parallel);

std::vector<double> distances_to(std::span<const SrvfCurve> curves, const SrvfCurve& reference,
                                 const ElasticOptions& options = {},
                                 Execution exec = Execution::parallel);

}  // namespace shapeforge
