#pragma once

#include <span>

#include "shapeforge/error.hpp"
#include "shapeforge/shape_core.hpp"

namespace shapeforge {

struct FrechetOptions {
  int max_iterations = 200;
  /// Stop once the mean tangent vector is shorter than this.
  double tolerance = 1e-10;
};

/// Raised when the tangent averaging does not settle; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(PreShape last, int iterations, double residual);

  const PreShape& last_iterate() const { return last_; }
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  PreShape last_;
  int iterations_;
  double residual_;
};

/// Mean shape: repeatedly aligns every sample to the current estimate,
/// averages their Procrustes tangent projections and steps along the
/// exponential map. Initialized at the first sample.
///
/// Requires every pair of samples to be strictly closer than pi/2 in shape
/// space (an open hemisphere after alignment); throws invalid_argument
/// otherwise.
PreShape frechet_mean(std::span<const PreShape> shapes, const FrechetOptions& options = {});

}  // namespace shapeforge
