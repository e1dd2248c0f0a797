#include <limits>

#include "shapeforge/elastic.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/sphere.hpp"

namespace shapeforge {

PointList elastic_log(const SrvfCurve& base, const SrvfCurve& target, const ElasticOptions& options) {
  const ElasticAlignment rec = align_srvf(base, target, options);
  const PointList aligned = sphere::normalized(warped_srvf(target, rec).sphere_point());
  const SrvfCurve unit_base = SrvfCurve::from_sphere_point(base.sphere_point(), base.closed());
  return sphere::log(unit_base.sphere_point(), aligned);
}

SrvfCurve elastic_mean(std::span<const SrvfCurve> curves, const ElasticMeanOptions& options) {
  if (curves.empty()) throw Error(ErrorKind::invalid_argument, "elastic mean of an empty sample");
  const bool closed = curves.front().closed();
  PointList mean = SrvfCurve::from_sphere_point(curves.front().sphere_point(), closed).sphere_point();
  PointList best = mean;
  double best_norm = std::numeric_limits<double>::infinity();

  for (int it = 0; it < options.max_iterations; ++it) {
    const SrvfCurve current = SrvfCurve::from_sphere_point(mean, closed);
    PointList step(mean.size());
    for (const auto& c : curves) {
      const PointList v = elastic_log(current, c, options.elastic);
      for (std::size_t i = 0; i < step.size(); ++i) step[i] += v[i];
    }
    for (auto& p : step) p *= 1.0 / static_cast<double>(curves.size());
    step = sphere::project_tangent(mean, step);
    const double len = frobenius_norm(step);
    if (len < best_norm) {
      best_norm = len;
      best = mean;
    }
    if (len < options.tolerance) break;
    mean = sphere::exp(mean, step);
  }
  return SrvfCurve::from_sphere_point(best, closed);
}

}  // namespace shapeforge
