#include "shapeforge/kernels.hpp"

#include <string>
#include <type_traits>
#include <utility>

#include "shapeforge/error.hpp"

namespace shapeforge {

namespace {

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n > 1 ? n * (n - 1) / 2 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

// Fills the upper triangle through `metric` and mirrors it. Each entry is
// written by exactly one iteration, so the two paths agree bit for bit.
template <typename Metric>
DistanceMatrix fill_matrix(std::size_t n, Metric&& metric, Execution exec) {
  DistanceMatrix out{n, std::vector<double>(n * n, 0.0)};
  const auto pairs = upper_pairs(n);
  const long count = static_cast<long>(pairs.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) {
      const auto [i, j] = pairs[k];
      out.values[i * n + j] = metric(i, j);
    }
  } else {
    for (long k = 0; k < count; ++k) {
      const auto [i, j] = pairs[k];
      out.values[i * n + j] = metric(i, j);
    }
  }
  for (const auto& [i, j] : pairs) out.values[j * n + i] = out.values[i * n + j];
  return out;
}

template <typename Metric>
std::vector<double> fill_vector(std::size_t n, Metric&& metric, Execution exec) {
  std::vector<double> out(n);
  const long count = static_cast<long>(n);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) out[k] = metric(static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < count; ++k) out[k] = metric(static_cast<std::size_t>(k));
  }
  return out;
}

// Exceptions cannot leave an OpenMP region, so shapes are checked up front.
template <typename T>
void require_uniform(std::span<const T> items, const T* reference = nullptr) {
  if (items.empty() && !reference) return;
  const T& first = reference ? *reference : items.front();
  for (const auto& item : items) {
    if (item.size() != first.size()) {
      throw Error(ErrorKind::dimension_mismatch, "inputs differ in size: " + std::to_string(item.size()) +
                                                     " vs " + std::to_string(first.size()));
    }
    if constexpr (std::is_same_v<T, SrvfCurve>) {
      if (item.closed() != first.closed()) {
        throw Error(ErrorKind::invalid_argument, "cannot mix closed and open curves");
      }
    }
  }
}

ElasticOptions inner_serial(ElasticOptions options) {
  options.execution = Execution::serial;
  return options;
}

}  // namespace

DistanceMatrix distance_matrix(std::span<const PreShape> shapes, Execution exec) {
  require_uniform(shapes);
  return fill_matrix(
      shapes.size(), [&](std::size_t i, std::size_t j) { return shape_geodesic(shapes[i], shapes[j]); },
      exec);
}

DistanceMatrix distance_matrix(std::span<const SrvfCurve> curves, const ElasticOptions& options,
                               Execution exec) {
  require_uniform(curves);
  const ElasticOptions inner = inner_serial(options);
  return fill_matrix(
      curves.size(),
      [&](std::size_t i, std::size_t j) { return align_srvf(curves[i], curves[j], inner).distance; },
      exec);
}

std::vector<double> distances_to(std::span<const PreShape> shapes, const PreShape& reference,
                                 Execution exec) {
  require_uniform(shapes, &reference);
  return fill_vector(
      shapes.size(), [&](std::size_t i) { return shape_geodesic(reference, shapes[i]); }, exec);
}

std::vector<double> distances_to(std::span<const SrvfCurve> curves, const SrvfCurve& reference,
                                 const ElasticOptions& options, Execution exec) {
  require_uniform(curves, &reference);
  const ElasticOptions inner = inner_serial(options);
  return fill_vector(
      curves.size(), [&](std::size_t i) { return align_srvf(reference, curves[i], inner).distance; },
      exec);
}

}  // namespace shapeforge
