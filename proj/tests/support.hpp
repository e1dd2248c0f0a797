#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "shapeforge/elastic.hpp"
#include "shapeforge/geometry.hpp"
#include "shapeforge/ingest.hpp"
#include "shapeforge/shape_core.hpp"

namespace testing {

using shapeforge::Point;
using shapeforge::PointList;

inline constexpr double kPi = std::numbers::pi;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(std::mt19937_64& rng, double sigma) {
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

inline PointList random_points(std::mt19937_64& rng, std::size_t k, double spread = 1.0) {
  PointList pts(k);
  for (auto& p : pts) p = {uniform(rng, -spread, spread), uniform(rng, -spread, spread)};
  return pts;
}

/// Star-shaped simple polygon: sorted angles, radii in [1 - jitter, 1 + jitter].
inline PointList random_polygon(std::mt19937_64& rng, std::size_t m, double jitter = 0.4) {
  std::vector<double> angles(m);
  for (std::size_t i = 0; i < m; ++i) {
    angles[i] = 2.0 * kPi * (static_cast<double>(i) + uniform(rng, 0.1, 0.9)) / static_cast<double>(m);
  }
  PointList pts(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = 1.0 + uniform(rng, -jitter, jitter);
    pts[i] = {r * std::cos(angles[i]), r * std::sin(angles[i])};
  }
  return pts;
}

/// x -> s * R(theta) x + t with R written out explicitly (counterclockwise).
inline PointList similarity(const PointList& pts, double s, double theta, Point t) {
  const double c = std::cos(theta), sn = std::sin(theta);
  PointList out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({s * (c * p.x - sn * p.y) + t.x, s * (sn * p.x + c * p.y) + t.y});
  return out;
}

inline PointList rotated(const PointList& pts, double theta) { return similarity(pts, 1.0, theta, {0, 0}); }

inline PointList ellipse(std::size_t n, double a, double b, double phase = 0.0) {
  PointList pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = phase + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {a * std::cos(t), b * std::sin(t)};
  }
  return pts;
}

inline PointList circle(std::size_t n) { return ellipse(n, 1.0, 1.0); }

inline shapeforge::PreShape preshape(const PointList& pts) {
  return shapeforge::to_preshape(shapeforge::Configuration(pts));
}

inline double max_point_error(const PointList& a, const PointList& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::hypot(a[i].x - b[i].x, a[i].y - b[i].y));
  return e;
}

inline PointList to_list(std::span<const Point> s) { return PointList(s.begin(), s.end()); }

/// Minimizes f over [0, 2 pi) by a uniform grid followed by golden-section
/// refinement around the best grid cell. Returns {argmin, min}.
inline std::pair<double, double> minimize_angle(const std::function<double(double)>& f, std::size_t grid) {
  double best_t = 0.0, best_v = f(0.0);
  const double h = 2.0 * kPi / static_cast<double>(grid);
  for (std::size_t i = 1; i < grid; ++i) {
    const double t = h * static_cast<double>(i);
    const double v = f(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = best_t - h, hi = best_t + h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double t = 0.5 * (lo + hi);
  const double v = f(t);
  return v < best_v ? std::pair{t, v} : std::pair{best_t, best_v};
}

/// ||a - b R(theta)||_F computed directly from coordinates.
inline double rotated_residual(std::span<const Point> a, std::span<const Point> b, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = c * b[i].x - s * b[i].y;
    const double y = s * b[i].x + c * b[i].y;
    sum += (a[i].x - x) * (a[i].x - x) + (a[i].y - y) * (a[i].y - y);
  }
  return std::sqrt(sum);
}

inline double wrap_angle(double t) { return std::remainder(t, 2.0 * kPi); }

/// Two-sided Student t tail by composite Simpson integration of the density
/// over [0, |t|] with `intervals` panels.
inline double t_two_sided_quadrature(double t, double df, std::size_t intervals = 200000) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * kPi);
  auto density = [&](double x) { return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df)); };
  const double b = std::abs(t);
  if (b == 0.0) return 1.0;
  const double h = b / static_cast<double>(intervals);
  double sum = density(0.0) + density(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    sum += density(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return 1.0 - 2.0 * sum * h / 3.0;
}

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Vec flatten(const PointList& v) {
  Vec out;
  for (const auto& p : v) {
    out.push_back(p.x);
    out.push_back(p.y);
  }
  return out;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Unbiased sample covariance built entry by entry.
inline Mat covariance(const std::vector<Vec>& rows) {
  const std::size_t d = rows.front().size();
  Vec mean(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i) mean[i] += r[i] / static_cast<double>(rows.size());
  Mat c(d, Vec(d, 0.0));
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
  for (auto& row : c)
    for (auto& v : row) v /= static_cast<double>(rows.size() - 1);
  return c;
}

/// Power iteration with deflation: top `count` eigenpairs of a symmetric matrix.
inline std::pair<Vec, std::vector<Vec>> power_eigen(Mat m, std::size_t count) {
  const std::size_t d = m.size();
  Vec values;
  std::vector<Vec> vectors;
  for (std::size_t c = 0; c < count; ++c) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i * (c + 3) % 7);
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
      Vec w(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w[i] += m[i][j] * v[j];
      for (const auto& u : vectors) {
        const double proj = dot(w, u);
        for (std::size_t i = 0; i < d; ++i) w[i] -= proj * u[i];
      }
      const double norm_w = std::sqrt(dot(w, w));
      for (auto& x : w) x /= norm_w;
      double change = 0.0;
      for (std::size_t i = 0; i < d; ++i) change = std::max(change, std::abs(w[i] - v[i]));
      v = w;
      lambda = norm_w;
      if (change < 1e-15) break;
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] -= lambda * v[i] * v[j];
    values.push_back(lambda);
    vectors.push_back(v);
  }
  return {values, vectors};
}

inline double sign_free_error(const Vec& a, const Vec& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = std::max(plus, std::abs(a[i] - b[i]));
    minus = std::max(minus, std::abs(a[i] + b[i]));
  }
  return std::min(plus, minus);
}

/// Circle sampled at n angles with Gaussian radial noise.
inline PointList noisy_circle(std::mt19937_64& rng, std::size_t n, double sigma) {
  PointList pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = 1.0 + gaussian(rng, sigma);
    pts[i] = {r * std::cos(t), r * std::sin(t)};
  }
  return pts;
}

/// Radius 1 + amplitude * sum_{h=2..4} (a_h cos(h t) + b_h sin(h t)) with
/// uniform coefficients in [-1, 1].
inline PointList fourier_blob(std::mt19937_64& rng, std::size_t n, double amplitude) {
  double a[5] = {}, b[5] = {};
  for (int h = 2; h <= 4; ++h) {
    a[h] = uniform(rng, -1.0, 1.0);
    b[h] = uniform(rng, -1.0, 1.0);
  }
  PointList pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    double r = 1.0;
    for (int h = 2; h <= 4; ++h) r += amplitude * (a[h] * std::cos(h * t) + b[h] * std::sin(h * t));
    pts[i] = {r * std::cos(t), r * std::sin(t)};
  }
  return pts;
}

/// Star polygon with m in [lo, hi] vertices and radial jitter.
inline PointList angular_polygon(std::mt19937_64& rng, std::size_t lo, std::size_t hi, double jitter) {
  const std::size_t m = lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  return random_polygon(rng, m, jitter);
}

}  // namespace testing
