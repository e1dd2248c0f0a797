#include "shapeforge/elastic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "shapeforge/error.hpp"

namespace shapeforge {

namespace {

void require_same_segments(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::dimension_mismatch,
                "curves have different sample counts: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

// Length (in units of a's grid) of a-segment p intersected with the preimage
// of b-segment q under the linear map of a step (di, dj).
double overlap_weight(int p, int q, int di, int dj) {
  const double ratio = static_cast<double>(di) / static_cast<double>(dj);
  const double lo = std::max<double>(p, q * ratio);
  const double hi = std::min<double>(p + 1, (q + 1) * ratio);
  return std::max(0.0, hi - lo);
}

struct StepTerm {
  int dp;
  int dq;
  double overlap;
  double weight;  // overlap * sqrt(slope)
};

struct Step {
  int di;
  int dj;
  std::vector<StepTerm> terms;
};

// Slope-constrained step set: (1,1), (1,2), (2,1), (1,3), (3,1).
const std::vector<Step>& step_set() {
  static const std::vector<Step> steps = [] {
    constexpr std::array<std::array<int, 2>, 5> shapes{{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}}};
    std::vector<Step> out;
    for (const auto& [di, dj] : shapes) {
      Step s{di, dj, {}};
      const double root = std::sqrt(static_cast<double>(dj) / di);
      for (int p = 0; p < di; ++p) {
        for (int q = 0; q < dj; ++q) {
          const double w = overlap_weight(p, q, di, dj);
          if (w > 0.0) s.terms.push_back({p, q, w, w * root});
        }
      }
      out.push_back(std::move(s));
    }
    return out;
  }();
  return steps;
}

// Pairwise products of two SRVFs, with b's columns stored twice so a seed
// shift is a plain offset. For rotation (c, s):
//   <q_a[p], q_b[q] Gamma> = c * dots[p][q] + s * crosses[p][q].
class MatchKernel {
 public:
  MatchKernel(std::span<const Point> qa, std::span<const Point> qb, bool closed)
      : n_(qa.size()), closed_(closed), dt_(1.0 / static_cast<double>(qa.size())),
        dots_(n_ * 2 * n_), crosses_(n_ * 2 * n_), self_(n_) {
    for (std::size_t p = 0; p < n_; ++p) {
      self_[p] = dot(qa[p], qa[p]);
      for (std::size_t q = 0; q < 2 * n_; ++q) {
        const Point& b = qb[q % n_];
        dots_[p * 2 * n_ + q] = dot(qa[p], b);
        crosses_[p * 2 * n_ + q] = cross(b, qa[p]);
      }
    }
  }

  std::size_t shift_count() const { return closed_ ? n_ : 1; }

  struct ShiftResult {
    double inner = -std::numeric_limits<double>::infinity();
    double c = 1.0;
    double s = 0.0;
    std::vector<WarpNode> path;
  };

  /// Rotation from the identity warp, then one DP pass and rotation refit.
  ShiftResult start(std::size_t shift) const {
    ShiftResult r;
    r.path = diagonal_path();
    auto [alpha, beta] = path_sums(r.path, shift);
    r.inner = std::hypot(alpha, beta);
    if (r.inner > 0.0) {
      r.c = alpha / r.inner;
      r.s = beta / r.inner;
    }
    refine(shift, r, 1);
    return r;
  }

  /// Alternates DP and rotation refit until the inner product stops growing.
  void refine(std::size_t shift, ShiftResult& r, int passes) const {
    for (int it = 0; it < passes; ++it) {
      std::vector<WarpNode> path = run_dp(shift, r.c, r.s);
      const auto [alpha, beta] = path_sums(path, shift);
      const double inner = std::hypot(alpha, beta);
      if (!(inner > r.inner + 1e-14)) return;
      r.inner = inner;
      r.c = alpha / inner;
      r.s = beta / inner;
      r.path = std::move(path);
    }
  }

  /// 1 - <q_a, warped q_b>, accumulated as <q_a, q_a - warped q_b> term by
  /// term so that it vanishes exactly when the warped curve reproduces q_a.
  double deficit(std::size_t shift, const ShiftResult& r) const {
    double total = 0.0;
    const auto& steps = step_set();
    for (std::size_t k = 1; k < r.path.size(); ++k) {
      const int di = static_cast<int>(r.path[k].a - r.path[k - 1].a);
      const int dj = static_cast<int>(r.path[k].b - r.path[k - 1].b);
      const auto it = std::find_if(steps.begin(), steps.end(),
                                   [&](const Step& s) { return s.di == di && s.dj == dj; });
      for (const auto& t : it->terms) {
        const std::size_t p = r.path[k - 1].a + t.dp;
        const std::size_t idx = p * 2 * n_ + r.path[k - 1].b + t.dq + shift;
        const double root = t.weight / t.overlap;
        total += t.overlap * (self_[p] - root * (r.c * dots_[idx] + r.s * crosses_[idx]));
      }
    }
    return total * dt_;
  }

 private:
  std::vector<WarpNode> diagonal_path() const {
    std::vector<WarpNode> path(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) path[i] = {i, i};
    return path;
  }

  // Sums of the dot and cross terms along a path: the path's inner product
  // at rotation (c, s) is c * alpha + s * beta.
  std::pair<double, double> path_sums(const std::vector<WarpNode>& path, std::size_t shift) const {
    double alpha = 0.0;
    double beta = 0.0;
    const auto& steps = step_set();
    for (std::size_t k = 1; k < path.size(); ++k) {
      const int di = static_cast<int>(path[k].a - path[k - 1].a);
      const int dj = static_cast<int>(path[k].b - path[k - 1].b);
      const auto it = std::find_if(steps.begin(), steps.end(),
                                   [&](const Step& s) { return s.di == di && s.dj == dj; });
      for (const auto& t : it->terms) {
        const std::size_t idx = (path[k - 1].a + t.dp) * 2 * n_ + path[k - 1].b + t.dq + shift;
        alpha += t.weight * dots_[idx];
        beta += t.weight * crosses_[idx];
      }
    }
    return {alpha * dt_, beta * dt_};
  }

  std::vector<WarpNode> run_dp(std::size_t shift, double c, double s) const {
    const std::size_t n = n_;
    const std::size_t w = n + 1;
    // Finite sentinel: unreachable cells stay hugely negative without branches.
    constexpr double kUnreached = -1e300;

    thread_local std::vector<double> gram;
    thread_local std::vector<double> score;
    thread_local std::vector<std::uint8_t> from;
    gram.assign((n + 3) * (n + 3), 0.0);
    score.assign(w * w, kUnreached);
    from.assign(w * w, 0);

    // gram is padded by 3 leading rows and columns so stencils never index
    // below zero; G(p, q) = <q_a[p], q_b[q + shift] Gamma>.
    const std::size_t gw = n + 3;
    auto G = [&](long p, long q) -> double& { return gram[(p + 3) * gw + (q + 3)]; };
    for (std::size_t p = 0; p < n; ++p) {
      const double* dr = &dots_[p * 2 * n + shift];
      const double* cr = &crosses_[p * 2 * n + shift];
      double* g = &G(static_cast<long>(p), 0);
      for (std::size_t q = 0; q < n; ++q) g[q] = c * dr[q] + s * cr[q];
    }

    // Step weights (overlap * sqrt(slope)), matching step_set().
    static const double w12 = std::sqrt(2.0) / 2.0;
    static const double w13 = std::sqrt(3.0) / 3.0;

    score[0] = 0.0;
    const long ln = static_cast<long>(n);
    for (long i = 1; i <= ln; ++i) {
      // Nodes reachable from (0,0) and able to reach (n,n) with slopes in [1/3, 3].
      const long jlo = std::max({1L, (i + 2) / 3, ln - 3 * (ln - i)});
      const long jhi = std::min({3 * i, ln - (ln - i + 2) / 3});
      const double* s1 = &score[(i - 1) * w];
      const double* s2 = i >= 2 ? &score[(i - 2) * w] : nullptr;
      const double* s3 = i >= 3 ? &score[(i - 3) * w] : nullptr;
      double* out = &score[i * w];
      std::uint8_t* arg_out = &from[i * w];
      for (long j = jlo; j <= jhi; ++j) {
        const double g11 = G(i - 1, j - 1);
        double best = s1[j - 1] + g11;
        std::uint8_t arg = 0;
        if (j >= 2) {
          const double v = s1[j - 2] + w12 * (G(i - 1, j - 2) + g11);
          if (v > best) { best = v; arg = 1; }
        }
        if (s2) {
          const double v = s2[j - 1] + w12 * (G(i - 2, j - 1) + g11);
          if (v > best) { best = v; arg = 2; }
        }
        if (j >= 3) {
          const double v = s1[j - 3] + w13 * (G(i - 1, j - 3) + G(i - 1, j - 2) + g11);
          if (v > best) { best = v; arg = 3; }
        }
        if (s3) {
          const double v = s3[j - 1] + w13 * (G(i - 3, j - 1) + G(i - 2, j - 1) + g11);
          if (v > best) { best = v; arg = 4; }
        }
        out[j] = best;
        arg_out[j] = arg;
      }
    }

    const auto& steps = step_set();
    std::vector<WarpNode> path;
    path.reserve(n + 1);
    std::size_t i = n;
    std::size_t j = n;
    path.push_back({i, j});
    while (i > 0 || j > 0) {
      const Step& st = steps[from[i * w + j]];
      i -= st.di;
      j -= st.dj;
      path.push_back({i, j});
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  std::size_t n_;
  bool closed_;
  double dt_;
  std::vector<double> dots_;
  std::vector<double> crosses_;
  std::vector<double> self_;
};

SrvfCurve as_normalized(const SrvfCurve& q) {
  if (q.normalized()) return q;
  PointList v(q.values().begin(), q.values().end());
  const double len = q.l2_norm();
  for (auto& p : v) p *= 1.0 / len;
  return SrvfCurve(std::move(v), q.closed(), true);
}

// Sample-index time (segment units) -> point on the curve's polyline.
Point at_time(const DiscreteCurve& c, double t) {
  const auto pts = c.samples();
  const std::size_t segs = c.segment_count();
  const double period = static_cast<double>(segs);
  if (c.closed()) {
    t = std::fmod(t, period);
    if (t < 0) t += period;
  } else {
    t = std::clamp(t, 0.0, period);
  }
  std::size_t k = static_cast<std::size_t>(std::floor(t));
  if (k >= segs) k = segs - 1;
  const double frac = t - static_cast<double>(k);
  const Point& p0 = pts[k];
  const Point& p1 = pts[(k + 1) % pts.size()];
  return frac == 0.0 ? p0 : p0 * (1.0 - frac) + p1 * frac;
}

// One candidate representation of a curve pair for DiscreteCurve-level matching.
struct Candidate {
  ElasticAlignment record;
  bool resampled = false;
};

Candidate best_representation(const DiscreteCurve& oa, const DiscreteCurve& ob, const ElasticOptions& options) {
  Candidate raw{align_srvf(srvf_transform(oa, true), srvf_transform(ob, true), options), false};
  Candidate even{align_srvf(srvf_transform(uniform_arclength(oa), true),
                            srvf_transform(uniform_arclength(ob), true), options),
                 true};
  return even.record.inner > raw.record.inner ? even : raw;
}

}  // namespace

DiscreteCurve::DiscreteCurve(PointList samples, bool closed)
    : samples_(std::move(samples)), closed_(closed) {
  if (samples_.size() < kMinCurveSamples) {
    throw Error(ErrorKind::degenerate_curve, "curve needs at least " +
                                                 std::to_string(kMinCurveSamples) +
                                                 " samples, got " + std::to_string(samples_.size()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].x) || !std::isfinite(samples_[i].y)) {
      throw Error(ErrorKind::degenerate_curve, "non-finite sample " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < segment_count(); ++i) {
    if (samples_[i] == samples_[(i + 1) % samples_.size()]) {
      throw Error(ErrorKind::degenerate_curve, "zero-length segment at sample " + std::to_string(i));
    }
  }
}

SrvfCurve::SrvfCurve(PointList values, bool closed, bool normalized)
    : values_(std::move(values)), closed_(closed), normalized_(normalized) {
  if (values_.empty()) throw Error(ErrorKind::degenerate_curve, "empty SRVF");
}

double SrvfCurve::l2_norm() const { return frobenius_norm(values_) * std::sqrt(dt()); }

PointList SrvfCurve::sphere_point() const {
  PointList out(values_);
  const double r = std::sqrt(dt());
  for (auto& p : out) p *= r;
  return out;
}

SrvfCurve SrvfCurve::from_sphere_point(std::span<const Point> p, bool closed) {
  PointList v(p.begin(), p.end());
  const double len = frobenius_norm(v);
  if (!(len > 0.0)) throw Error(ErrorKind::degenerate_curve, "zero SRVF");
  const double r = 1.0 / (len * std::sqrt(1.0 / static_cast<double>(v.size())));
  for (auto& x : v) x *= r;
  return SrvfCurve(std::move(v), closed, true);
}

SrvfCurve srvf_transform(const DiscreteCurve& curve, bool normalize) {
  const auto f = curve.samples();
  const std::size_t segs = curve.segment_count();
  const double dt = 1.0 / static_cast<double>(segs);
  PointList q(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const Point velocity = (f[(i + 1) % f.size()] - f[i]) * (1.0 / dt);
    const double speed = norm(velocity);
    if (!(speed > 0.0)) {
      throw Error(ErrorKind::degenerate_curve, "zero-length segment at sample " + std::to_string(i));
    }
    q[i] = velocity * (1.0 / std::sqrt(speed));
  }
  SrvfCurve out(std::move(q), curve.closed(), false);
  return normalize ? as_normalized(out) : out;
}

DiscreteCurve srvf_inverse(const SrvfCurve& q, Point start) {
  const double dt = q.dt();
  PointList f;
  f.reserve(q.size() + 1);
  f.push_back(start);
  for (const auto& v : q.values()) f.push_back(f.back() + v * (norm(v) * dt));
  return DiscreteCurve(std::move(f), false);
}

DiscreteCurve orient_ccw(const DiscreteCurve& curve) {
  if (!curve.closed() || signed_area(curve.samples()) >= 0.0) return curve;
  const auto s = curve.samples();
  PointList r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[(s.size() - i) % s.size()];
  return DiscreteCurve(std::move(r), true);
}

DiscreteCurve uniform_arclength(const DiscreteCurve& curve) {
  const Polyline line(curve.samples(), curve.closed());
  const double step = line.length() / static_cast<double>(curve.segment_count());
  PointList out(curve.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = line.at(step * static_cast<double>(k));
  if (!curve.closed()) out.back() = curve.samples().back();
  return DiscreteCurve(std::move(out), curve.closed());
}

SrvfCurve elastic_srvf(const DiscreteCurve& curve) { return srvf_transform(orient_ccw(curve), true); }

ElasticAlignment match_srvf(const SrvfCurve& a, const SrvfCurve& b, const ElasticOptions& options) {
  require_same_segments(a.size(), b.size());
  if (a.closed() != b.closed()) {
    throw Error(ErrorKind::invalid_argument, "cannot match a closed curve against an open one");
  }
  const SrvfCurve na = as_normalized(a);
  const SrvfCurve nb = as_normalized(b);
  const MatchKernel kernel(na.values(), nb.values(), na.closed());
  const long shifts = static_cast<long>(kernel.shift_count());
  std::vector<MatchKernel::ShiftResult> results(static_cast<std::size_t>(shifts));
  const int more = std::max(0, options.max_refinements - 1);

  // Every shift gets one DP pass; the most promising ones are then refined.
  std::vector<long> order(static_cast<std::size_t>(shifts));
  const bool exhaustive = options.refine_candidates == 0 ||
                          options.refine_candidates >= static_cast<std::size_t>(shifts);
  if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < shifts; ++s) {
      results[s] = kernel.start(static_cast<std::size_t>(s));
      if (exhaustive) kernel.refine(static_cast<std::size_t>(s), results[s], more);
    }
  } else {
    for (long s = 0; s < shifts; ++s) {
      results[s] = kernel.start(static_cast<std::size_t>(s));
      if (exhaustive) kernel.refine(static_cast<std::size_t>(s), results[s], more);
    }
  }
  if (!exhaustive && more > 0) {
    for (long s = 0; s < shifts; ++s) order[s] = s;
    const auto keep = static_cast<long>(options.refine_candidates);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](long x, long y) {
      return results[x].inner > results[y].inner || (results[x].inner == results[y].inner && x < y);
    });
    if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long k = 0; k < keep; ++k) kernel.refine(static_cast<std::size_t>(order[k]), results[order[k]], more);
    } else {
      for (long k = 0; k < keep; ++k) kernel.refine(static_cast<std::size_t>(order[k]), results[order[k]], more);
    }
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].inner > results[best].inner) best = s;
  }
  ElasticAlignment out;
  out.shift_b = best;
  out.rotation = Rotation2::from_cos_sin(results[best].c, results[best].s);
  out.inner = std::clamp(results[best].inner, -1.0, 1.0);
  // Equal to acos(inner) for unit q_a, without its cancellation near zero.
  const double gap = std::clamp(kernel.deficit(best, results[best]), 0.0, 2.0);
  out.distance = 2.0 * std::asin(std::sqrt(gap / 2.0));
  out.path = std::move(results[best].path);
  return out;
}

ElasticAlignment align_srvf(const SrvfCurve& a, const SrvfCurve& b, const ElasticOptions& options) {
  ElasticAlignment forward = match_srvf(a, b, options);
  ElasticAlignment backward = match_srvf(b, a, options);
  if (!(backward.inner > forward.inner)) return forward;

  // Warping a onto b with gamma is warping b onto a with gamma^-1: swap the
  // path coordinates, move the shift to a and invert the rotation.
  ElasticAlignment out;
  out.shift_a = backward.shift_b;
  out.shift_b = backward.shift_a;
  out.rotation = backward.rotation.inverse();
  out.path.reserve(backward.path.size());
  for (const auto& node : backward.path) out.path.push_back({node.b, node.a});
  out.inner = backward.inner;
  out.distance = backward.distance;
  return out;
}

double elastic_distance(const DiscreteCurve& a, const DiscreteCurve& b, const ElasticOptions& options) {
  require_same_segments(a.segment_count(), b.segment_count());
  return best_representation(orient_ccw(a), orient_ccw(b), options).record.distance;
}

double score_alignment(const SrvfCurve& a, const SrvfCurve& b, const ElasticAlignment& alignment) {
  require_same_segments(a.size(), b.size());
  const SrvfCurve na = as_normalized(a);
  const SrvfCurve nb = as_normalized(b);
  const std::size_t n = na.size();
  const auto qa = na.values();
  const auto qb = nb.values();
  double total = 0.0;
  for (std::size_t k = 1; k < alignment.path.size(); ++k) {
    const auto& from = alignment.path[k - 1];
    const auto& to = alignment.path[k];
    const int di = static_cast<int>(to.a - from.a);
    const int dj = static_cast<int>(to.b - from.b);
    if (di <= 0 || dj <= 0) {
      throw Error(ErrorKind::invalid_argument, "warping path must be strictly increasing");
    }
    const double root = std::sqrt(static_cast<double>(dj) / di);
    for (int p = 0; p < di; ++p) {
      for (int q = 0; q < dj; ++q) {
        const double w = overlap_weight(p, q, di, dj);
        if (w == 0.0) continue;
        const Point& va = qa[(from.a + p + alignment.shift_a) % n];
        const Point vb = alignment.rotation.apply(qb[(from.b + q + alignment.shift_b) % n]);
        total += w * root * dot(va, vb);
      }
    }
  }
  return total * na.dt();
}

SrvfCurve warped_srvf(const SrvfCurve& b, const ElasticAlignment& alignment) {
  const SrvfCurve nb = as_normalized(b);
  const std::size_t n = nb.size();
  const auto qb = nb.values();
  PointList shifted(n);
  for (std::size_t k = 1; k < alignment.path.size(); ++k) {
    const auto& from = alignment.path[k - 1];
    const auto& to = alignment.path[k];
    const int di = static_cast<int>(to.a - from.a);
    const int dj = static_cast<int>(to.b - from.b);
    const double root = std::sqrt(static_cast<double>(dj) / di);
    for (int p = 0; p < di; ++p) {
      for (int q = 0; q < dj; ++q) {
        const double w = overlap_weight(p, q, di, dj);
        if (w == 0.0) continue;
        const Point vb = alignment.rotation.apply(qb[(from.b + q + alignment.shift_b) % n]);
        shifted[from.a + p] += vb * (w * root);
      }
    }
  }
  PointList out(n);
  for (std::size_t p = 0; p < n; ++p) out[(p + alignment.shift_a) % n] = shifted[p];
  return SrvfCurve(std::move(out), nb.closed(), false);
}

CurveAlignment align_curves(const DiscreteCurve& a, const DiscreteCurve& b, const ElasticOptions& options) {
  require_same_segments(a.segment_count(), b.segment_count());
  const DiscreteCurve oa = orient_ccw(a);
  const DiscreteCurve ob = orient_ccw(b);
  Candidate best = best_representation(oa, ob, options);
  const ElasticAlignment& record = best.record;

  const Polyline la(oa.samples(), oa.closed());
  const Polyline lb(ob.samples(), ob.closed());
  const double period = static_cast<double>(oa.segment_count());
  const double scale = la.length() / lb.length();
  auto wrap = [&](double t) {
    if (!oa.closed()) return t;
    t = std::fmod(t, period);
    return t < 0.0 ? t + period : t;
  };

  const std::size_t count = oa.size();
  PointList oriented(count);
  for (std::size_t i = 0; i < count; ++i) {
    // a's sample i on the grid the record was computed on, in its shifted frame.
    const double ti = best.resampled ? la.position(i) / la.length() * period : static_cast<double>(i);
    const double t = wrap(ti - static_cast<double>(record.shift_a));
    std::size_t step = 1;
    while (step + 1 < record.path.size() && static_cast<double>(record.path[step].a) < t) ++step;
    const auto& from = record.path[step - 1];
    const auto& to = record.path[step];
    const double slope = static_cast<double>(to.b - from.b) / static_cast<double>(to.a - from.a);
    const double gamma = static_cast<double>(from.b) + (t - static_cast<double>(from.a)) * slope;
    const double u = wrap(gamma + static_cast<double>(record.shift_b));
    const Point on_b = best.resampled ? lb.at(u / period * lb.length()) : at_time(ob, u);
    oriented[i] = record.rotation.apply(on_b) * scale;
  }

  // Translate onto a's centroid.
  Point centroid_a;
  Point centroid_b;
  for (const auto& p : oa.samples()) centroid_a += p;
  for (const auto& p : oriented) centroid_b += p;
  const Point offset = (centroid_a - centroid_b) * (1.0 / static_cast<double>(count));
  for (auto& p : oriented) p += offset;

  // Back to a's original sample order if orient_ccw reversed it.
  PointList out = oriented;
  if (a.closed() && signed_area(a.samples()) < 0.0) {
    for (std::size_t m = 0; m < count; ++m) out[(count - m) % count] = oriented[m];
  }
  return {DiscreteCurve(std::move(out), a.closed()), std::move(best.record), best.resampled};
}

}  // namespace shapeforge
