#include "shapeforge/frechet.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace shapeforge {

ConvergenceError::ConvergenceError(PreShape last, int iterations, double residual)
    : Error(ErrorKind::convergence, "Frechet mean did not converge after " +
                                        std::to_string(iterations) +
                                        " iterations (residual " + std::to_string(residual) + ")"),
      last_(std::move(last)),
      iterations_(iterations),
      residual_(residual) {}

PreShape frechet_mean(std::span<const PreShape> shapes, const FrechetOptions& options) {
  if (shapes.empty()) throw Error(ErrorKind::invalid_argument, "Frechet mean of an empty sample");
  const std::size_t k = shapes.front().size();
  for (const auto& s : shapes) {
    if (s.size() != k) throw Error(ErrorKind::dimension_mismatch, "samples differ in landmark count");
  }
  constexpr double kHemisphere = 0.5 * std::numbers::pi - 1e-9;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      if (shape_geodesic(shapes[i], shapes[j]) >= kHemisphere) {
        throw Error(ErrorKind::invalid_argument,
                    "samples " + std::to_string(i) + " and " + std::to_string(j) +
                        " are not within an open hemisphere");
      }
    }
  }

  PreShape mean = shapes.front();
  double residual = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    PointList step(k);
    for (const auto& s : shapes) {
      const TangentVector v = procrustes_tangent_project(mean, s);
      const auto c = v.components();
      for (std::size_t i = 0; i < k; ++i) step[i] += c[i];
    }
    for (auto& p : step) p *= 1.0 / static_cast<double>(shapes.size());
    residual = frobenius_norm(step);
    if (residual < options.tolerance) return mean;
    mean = exp_map(mean, TangentVector::make(mean, std::move(step), 1e-9));
  }
  throw ConvergenceError(mean, options.max_iterations, residual);
}

}  // namespace shapeforge
