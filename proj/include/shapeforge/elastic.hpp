#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapeforge/execution.hpp"
#include "shapeforge/geometry.hpp"
#include "shapeforge/shape_core.hpp"

namespace shapeforge {

inline constexpr std::size_t kMinCurveSamples = 8;

/// Sampled planar curve. A closed curve of n samples has n segments (the last
/// sample joins the first); an open one has n - 1.
class DiscreteCurve {
 public:
  explicit DiscreteCurve(PointList samples, bool closed = true);

  std::span<const Point> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return closed_ ? samples_.size() : samples_.size() - 1; }

 private:
  PointList samples_;
  bool closed_;
};

/// Square-root velocity function of a DiscreteCurve: one planar value per
/// segment on a uniform parameter grid over [0, 1].
class SrvfCurve {
 public:
  SrvfCurve(PointList values, bool closed, bool normalized);

  std::span<const Point> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool closed() const { return closed_; }
  bool normalized() const { return normalized_; }
  double dt() const { return 1.0 / static_cast<double>(values_.size()); }

  /// sqrt(sum |q_i|^2 dt); equals sqrt(curve length).
  double l2_norm() const;

  /// values * sqrt(dt): the same function as a plain Frobenius vector, so the
  /// unit-sphere routines apply directly.
  PointList sphere_point() const;
  static SrvfCurve from_sphere_point(std::span<const Point> p, bool closed);

 private:
  PointList values_;
  bool closed_;
  bool normalized_;
};

SrvfCurve srvf_transform(const DiscreteCurve& curve, bool normalize = true);

/// Integrates q |q| dt from `start`; returns an open curve with size() + 1
/// samples (for closed input the last sample approximately repeats the first).
DiscreteCurve srvf_inverse(const SrvfCurve& q, Point start);

/// Reverses traversal when the signed area is negative, keeping sample 0.
DiscreteCurve orient_ccw(const DiscreteCurve& curve);

/// The same number of samples at equal arc-length spacing along the curve's
/// polyline, starting at sample 0 (and ending at the last sample for open
/// curves).
DiscreteCurve uniform_arclength(const DiscreteCurve& curve);

/// srvf_transform(orient_ccw(curve), true): the representation the SRVF-level
/// routines and the statistics work on.
SrvfCurve elastic_srvf(const DiscreteCurve& curve);

/// Grid node of a warping path: a-index, b-index, in segment units.
struct WarpNode {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const WarpNode&, const WarpNode&) = default;
};

/// How b was matched onto a: b's seed moved by shift_b, a's by shift_a,
/// b rotated, then b reparameterized along `path` (piecewise linear from
/// (0, 0) to (n, n) in the shifted frames).
struct ElasticAlignment {
  std::size_t shift_a = 0;
  std::size_t shift_b = 0;
  Rotation2 rotation;
  std::vector<WarpNode> path;
  double inner = 1.0;
  double distance = 0.0;
};

struct ElasticOptions {
  Execution execution = Execution::parallel;
  /// Upper bound on alternating DP / rotation passes per seed shift.
  int max_refinements = 8;
  /// Seed shifts refined past the first DP pass, best first; 0 refines all.
  std::size_t refine_candidates = 8;
};

/// One-directional match: optimizes rotation, seed shift and reparameterization
/// of b only. shift_a is always 0.
ElasticAlignment match_srvf(const SrvfCurve& a, const SrvfCurve& b,
                            const ElasticOptions& options = {});

/// Symmetric match: the better of warping b onto a and a onto b, expressed
/// as an alignment of b onto a.
ElasticAlignment align_srvf(const SrvfCurve& a, const SrvfCurve& b,
                            const ElasticOptions& options = {});

/// Geodesic distance on the SRVF unit sphere modulo rotation, seed point and
/// reparameterization. Both curves are matched as sampled and after
/// uniform_arclength; the closer match is reported. The second candidate
/// removes differences in sampling density, which the slope-limited warp can
/// only follow coarsely.
double elastic_distance(const DiscreteCurve& a, const DiscreteCurve& b,
                        const ElasticOptions& options = {});

/// Recomputes <q_a, (q_b o gamma) sqrt(gamma')> for a stored alignment.
double score_alignment(const SrvfCurve& a, const SrvfCurve& b, const ElasticAlignment& alignment);

/// The aligned b as a piecewise-constant function on a's grid (the L2
/// projection of (q_b o gamma) sqrt(gamma') Gamma). Its inner product with
/// a equals alignment.inner exactly; its norm is at most 1.
SrvfCurve warped_srvf(const SrvfCurve& b, const ElasticAlignment& alignment);

struct CurveAlignment {
  DiscreteCurve aligned;
  ElasticAlignment record;
  /// record refers to the uniform_arclength copies of the oriented curves
  /// rather than to the curves as sampled.
  bool resampled = false;
};

/// Copy of b rotated, re-seeded and reparameterized onto a, scaled to a's
/// length and translated to a's centroid, sampled at a's sample positions in
/// a's original order. Uses the same candidate representations as
/// elastic_distance; `record` refers to the SRVFs of orient_ccw(a) and
/// orient_ccw(b), or of their uniform_arclength copies when `resampled`.
CurveAlignment align_curves(const DiscreteCurve& a, const DiscreteCurve& b,
                            const ElasticOptions& options = {});

/// Tangent vector (in sphere_point coordinates) of the elastically aligned
/// target at `base`.
PointList elastic_log(const SrvfCurve& base, const SrvfCurve& target,
                      const ElasticOptions& options = {});

struct ElasticMeanOptions {
  int max_iterations = 30;
  double tolerance = 1e-6;
  ElasticOptions elastic;
};

/// Karcher mean of normalized SRVFs under the elastic metric, started from
/// the first sample. Returns the best iterate reached.
SrvfCurve elastic_mean(std::span<const SrvfCurve> curves, const ElasticMeanOptions& options = {});

}  // namespace shapeforge
