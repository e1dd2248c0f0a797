#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "shapeforge/control_chart.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/frechet.hpp"
#include "shapeforge/hypothesis.hpp"
#include "shapeforge/ingest.hpp"
#include "shapeforge/pga.hpp"
#include "shapeforge/summary.hpp"
#include "support.hpp"

using namespace shapeforge;
using namespace testing;

namespace {

std::vector<PreShape> perturbed_circles(std::mt19937_64& rng, std::size_t count, std::size_t k,
                                        double sigma) {
  std::vector<PreShape> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(preshape(noisy_circle(rng, k, sigma)));
  return out;
}

// Type-7 quantile read off the piecewise-linear curve through (i / (n - 1), x_(i)).
double interpolated_quantile(Vec v, double p) {
  std::sort(v.begin(), v.end());
  const double n1 = static_cast<double>(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double lo = static_cast<double>(i) / n1;
    const double hi = static_cast<double>(i + 1) / n1;
    if (p >= lo && p <= hi) return v[i] + (v[i + 1] - v[i]) * (p - lo) / (hi - lo);
  }
  return v.back();
}

}  // namespace

TEST_CASE("frechet mean: trivial inputs") {
  std::mt19937_64 rng(50);
  const PreShape z = preshape(random_points(rng, 12));
  const std::vector<PreShape> same(5, z);
  CHECK(shape_geodesic(frechet_mean(same), z) < 1e-12);
  CHECK(max_point_error(to_list(frechet_mean(same).points()), to_list(z.points())) == 0.0);

  try {
    frechet_mean(std::span<const PreShape>{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
}

TEST_CASE("frechet mean of two shapes is equidistant") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 20; ++k) {
    const std::vector<PreShape> two = {preshape(random_points(rng, 10)), preshape(random_points(rng, 10))};
    if (shape_geodesic(two[0], two[1]) > 1.4) continue;
    const PreShape m = frechet_mean(two);
    CHECK(std::abs(shape_geodesic(m, two[0]) - shape_geodesic(m, two[1])) < 1e-8);
    CHECK(shape_geodesic(m, two[0]) < shape_geodesic(two[0], two[1]));
  }
}

TEST_CASE("frechet mean is a fixed point and rotation invariant") {
  std::mt19937_64 rng(52);
  const std::vector<PreShape> shapes = perturbed_circles(rng, 15, 24, 0.08);
  const PreShape m = frechet_mean(shapes);

  PointList avg(24);
  for (const auto& s : shapes) {
    const TangentVector v = procrustes_tangent_project(m, s);
    for (std::size_t i = 0; i < 24; ++i) avg[i] += v.components()[i] * (1.0 / 15.0);
  }
  CHECK(frobenius_norm(avg) < 1e-10);

  std::vector<PreShape> spun;
  for (const auto& s : shapes) spun.push_back(preshape(rotated(to_list(s.points()), uniform(rng, -kPi, kPi))));
  CHECK(shape_geodesic(frechet_mean(spun), m) < 1e-8);
}

TEST_CASE("frechet mean hemisphere check and non-convergence") {
  // A labelled triangle and its mirror image sit at opposite poles of shape space.
  const PointList tri = {{1.0, 0.0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}};
  const PointList mirror = {tri[0], tri[2], tri[1]};
  const std::vector<PreShape> poles = {preshape(tri), preshape(mirror)};
  try {
    frechet_mean(poles);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }

  std::mt19937_64 rng(53);
  const std::vector<PreShape> shapes = perturbed_circles(rng, 10, 16, 0.2);
  FrechetOptions once;
  once.max_iterations = 1;
  try {
    frechet_mean(shapes, once);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::convergence);
    CHECK(e.iterations() == 1);
    CHECK(e.residual() > 1e-10);
    CHECK(e.last_iterate().size() == 16);
  }
}

TEST_CASE("PGA matches a power-iteration oracle") {
  std::mt19937_64 rng(54);
  const std::size_t k = 10, dim = 2 * k, count = 200;

  // Random orthonormal basis by Gram-Schmidt, spread 1 / (j + 1).
  std::vector<Vec> basis;
  while (basis.size() < dim) {
    Vec v(dim);
    for (auto& x : v) x = gaussian(rng, 1.0);
    for (const auto& u : basis) {
      const double p = dot(v, u);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= p * u[i];
    }
    const double n = std::sqrt(dot(v, v));
    for (auto& x : v) x /= n;
    basis.push_back(v);
  }
  std::vector<PointList> tangents;
  std::vector<Vec> rows;
  for (std::size_t s = 0; s < count; ++s) {
    Vec v(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      const double c = gaussian(rng, 1.0 / static_cast<double>(j + 1));
      for (std::size_t i = 0; i < dim; ++i) v[i] += c * basis[j][i];
    }
    PointList t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = {v[2 * i], v[2 * i + 1]};
    tangents.push_back(t);
    rows.push_back(v);
  }

  const PgaModel model = pga_from_tangents(to_list(circle_preshape(k).points()), tangents, dim);
  const Mat cov = covariance(rows);
  const auto [values, vectors] = power_eigen(cov, dim);

  REQUIRE(model.components.size() == dim);
  double trace = 0.0;
  for (std::size_t i = 0; i < dim; ++i) trace += cov[i][i];
  CHECK(std::abs(model.total_variance - trace) < 1e-12);
  double sum = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    CHECK(std::abs(model.variances[c] - values[c]) < 1e-6);
    CHECK(sign_free_error(flatten(model.components[c]), vectors[c]) < 1e-6);
    if (c > 0) CHECK(model.variances[c] <= model.variances[c - 1]);
    sum += model.variances[c];
    for (std::size_t d = 0; d < dim; ++d) {
      const double expected = c == d ? 1.0 : 0.0;
      CHECK(std::abs(frobenius_dot(model.components[c], model.components[d]) - expected) < 1e-8);
    }
    // Largest-magnitude coordinate is positive.
    const Vec e = flatten(model.components[c]);
    const auto it = std::max_element(e.begin(), e.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    CHECK(*it > 0.0);
  }
  CHECK(std::abs(sum - trace) < 1e-8);

  // Scores are plain projections; the full basis reconstructs every sample.
  for (std::size_t s = 0; s < count; s += 17) {
    for (std::size_t c = 0; c < dim; ++c) {
      CHECK(std::abs(model.scores[s][c] - frobenius_dot(tangents[s], model.components[c])) < 1e-12);
    }
    CHECK(max_point_error(model.reconstruct(model.scores[s]), tangents[s]) < 1e-10);
  }
  double fractions = 0.0;
  for (double f : model.explained_fraction()) fractions += f;
  CHECK(fractions <= 1.0 + 1e-9);
}

TEST_CASE("PGA of shapes") {
  std::mt19937_64 rng(55);
  const std::size_t k = 30;
  const PreShape base = circle_preshape(k);

  SUBCASE("rank-one data") {
    // Stretch the circle along one axis by varying amounts.
    std::vector<PreShape> shapes;
    for (int s = 0; s < 40; ++s) shapes.push_back(preshape(ellipse(k, 1.0 + uniform(rng, 0.0, 0.3), 1.0)));
    const PgaModel model = pga(shapes, base, 3);
    REQUIRE(!model.variances.empty());
    CHECK(model.explained_fraction()[0] > 0.999);
    if (model.variances.size() > 1) CHECK(model.variances[1] < 1e-6 * model.variances[0]);
  }

  SUBCASE("components are tangent at the base") {
    const std::vector<PreShape> shapes = perturbed_circles(rng, 25, k, 0.05);
    const PgaModel model = pga(shapes, base, 5);
    REQUIRE(model.components.size() == 5);
    for (const auto& c : model.components) {
      CHECK(std::abs(frobenius_dot(c, to_list(base.points()))) < 1e-8);
    }
  }

  SUBCASE("truncation beyond the rank is reported") {
    std::vector<PreShape> shapes;
    for (int s = 0; s < 3; ++s) shapes.push_back(preshape(noisy_circle(rng, k, 0.05)));
    const PgaModel model = pga(shapes, base, 10);
    CHECK(model.components.size() == 2);
    CHECK(model.warnings.size() == 1);
  }

  SUBCASE("scores centre at the Frechet mean") {
    const std::vector<PreShape> shapes = perturbed_circles(rng, 30, k, 0.05);
    const PreShape m = frechet_mean(shapes);
    const PgaModel model = pga(shapes, m, 4);
    for (std::size_t c = 0; c < model.components.size(); ++c) {
      double mean = 0.0;
      for (const auto& row : model.scores) mean += row[c] / static_cast<double>(model.scores.size());
      CHECK(std::abs(mean) < 1e-10);
    }
  }

  SUBCASE("too few samples") {
    const std::vector<PreShape> one = {base};
    CHECK_THROWS_AS(pga(one, base, 1), Error);
  }
}

TEST_CASE("regularized incomplete beta closed forms") {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    for (double b : {0.5, 1.0, 2.5, 7.0}) {
      CHECK(std::abs(regularized_incomplete_beta(1.0, b, x) - (1.0 - std::pow(1.0 - x, b))) < 1e-13);
      CHECK(std::abs(regularized_incomplete_beta(b, 1.0, x) - std::pow(x, b)) < 1e-13);
      CHECK(std::abs(regularized_incomplete_beta(b, 3.0, x) + regularized_incomplete_beta(3.0, b, 1.0 - x) - 1.0) <
            1e-13);
    }
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), Error);
}

TEST_CASE("t distribution tail matches quadrature") {
  for (double df : {1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
    for (double t = -10.0; t <= 10.0; t += 0.5) {
      CHECK(std::abs(student_t_two_sided_p(t, df) - t_two_sided_quadrature(t, df)) < 1e-6);
    }
  }
}

TEST_CASE("Welch t-test") {
  const Vec a = {1, 2, 3, 4, 5}, b = {2, 3, 4, 5, 6};
  const TTestResult r = two_sample_ttest(a, b);
  CHECK(r.t == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r.df == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(std::abs(r.p - t_two_sided_quadrature(-1.0, 8.0)) < 1e-6);

  const TTestResult same = two_sample_ttest(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);

  std::mt19937_64 rng(56);
  for (int k = 0; k < 50; ++k) {
    Vec x(2 + rng() % 20), y(2 + rng() % 20);
    for (auto& v : x) v = gaussian(rng, 1.0);
    for (auto& v : y) v = gaussian(rng, 3.0) + 0.5;
    const TTestResult xy = two_sample_ttest(x, y);
    const TTestResult yx = two_sample_ttest(y, x);
    CHECK(xy.t == -yx.t);
    CHECK(xy.p == yx.p);
    CHECK(xy.p > 0.0);
    CHECK(xy.p <= 1.0);
  }

  const Vec c1 = {2, 2, 2}, c2 = {2, 2}, c3 = {3, 3};
  CHECK(two_sample_ttest(c1, c2).p == 1.0);
  CHECK(two_sample_ttest(c1, c3).p == 0.0);
  const Vec single = {1.0};
  CHECK_THROWS_AS(two_sample_ttest(single, a), Error);
}

TEST_CASE("permutation test") {
  const Vec a = {0.3, 1.2, 0.8, 2.0, 1.1}, b = {1.5, 2.2, 1.9, 0.7, 2.6};

  // Every split of the ten pooled values into two groups of five.
  Vec pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto mean_of = [](const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double observed = std::abs(mean_of(a) - mean_of(b));
  std::size_t total = 0, extreme = 0;
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < 10; ++i) ((mask >> i) & 1u ? sa : sb) += pooled[i];
    ++total;
    if (std::abs(sa / 5 - sb / 5) >= observed - 1e-12) ++extreme;
  }
  REQUIRE(total == 252);
  const double exact = static_cast<double>(extreme) / 252.0;
  const double p = permutation_test(a, b, 200000, 7);
  MESSAGE("exact " << exact << ", sampled " << p);
  CHECK(std::abs(p - exact) < 0.005);

  CHECK(permutation_test(a, a, 999, 1) > 0.5);

  Vec lo(10), hi(10);
  for (int i = 0; i < 10; ++i) {
    lo[i] = 0.1 + 0.01 * i;
    hi[i] = 0.8 + 0.01 * i;
  }
  CHECK(permutation_test(lo, hi, 9999, 42) == doctest::Approx(1.0 / 10000.0).epsilon(1e-12));

  const double x = permutation_test(a, b, 5000, 123, Execution::parallel);
  CHECK(x == permutation_test(a, b, 5000, 123, Execution::parallel));
  CHECK(x == permutation_test(a, b, 5000, 123, Execution::serial));
  CHECK(x != permutation_test(a, b, 5000, 124, Execution::serial));
  CHECK_THROWS_AS(permutation_test(a, b, 99, 1), Error);
}

TEST_CASE("group summaries against an order-statistics oracle") {
  std::mt19937_64 rng(57);
  for (int k = 0; k < 40; ++k) {
    Vec v(1 + rng() % 30);
    for (auto& x : v) x = gaussian(rng, 1.0);
    if (k % 5 == 0) v.push_back(9.0);
    const GroupSummary s = summarize("g", v);
    const double q1 = interpolated_quantile(v, 0.25), q3 = interpolated_quantile(v, 0.75);
    CHECK(s.q1 == doctest::Approx(q1).epsilon(1e-12));
    CHECK(s.median == doctest::Approx(interpolated_quantile(v, 0.5)).epsilon(1e-12));
    CHECK(s.q3 == doctest::Approx(q3).epsilon(1e-12));
    CHECK(s.lower_fence == doctest::Approx(q1 - 1.5 * (q3 - q1)).epsilon(1e-12));
    CHECK(s.upper_fence == doctest::Approx(q3 + 1.5 * (q3 - q1)).epsilon(1e-12));
    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < s.lower_fence || v[i] > s.upper_fence) outliers.push_back(i);
    }
    CHECK(s.outliers == outliers);
    CHECK(s.min == *std::min_element(v.begin(), v.end()));
    CHECK(s.max == *std::max_element(v.begin(), v.end()));
  }
  const Vec one = {0.25};
  const GroupSummary single = summarize("one", one);
  CHECK(single.variance == 0.0);
  CHECK(single.median == 0.25);
  CHECK_THROWS_AS(summarize("empty", Vec{}), Error);
}

TEST_CASE("distance report") {
  std::mt19937_64 rng(58);
  const std::size_t n = 100;
  const PreShape reference = circle_preshape(n);

  const std::vector<LabeledShapes> self = {{"ref", {reference}}};
  const DistanceReport r0 = distance_report(self, reference);
  CHECK(r0.distances[0].values[0] < 1e-12);
  CHECK(r0.summaries[0].variance == 0.0);

  std::vector<LabeledShapes> groups = {{"circle", {}}, {"rounded", {}}, {"angular", {}}};
  for (int s = 0; s < 20; ++s) {
    groups[0].shapes.push_back(preshape(noisy_circle(rng, n, 0.01)));
    groups[1].shapes.push_back(preshape(fourier_blob(rng, n, 0.05)));
    const RawContour poly{"p", "angular", angular_polygon(rng, 7, 12, 0.2)};
    groups[2].shapes.push_back(preshape(to_list(resample_arclength(poly, n).samples())));
  }
  const DistanceReport r = distance_report(groups, reference);
  CHECK(r.summaries[0].mean < r.summaries[1].mean);
  CHECK(r.summaries[1].mean < r.summaries[2].mean);
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t j = 0; j < groups[g].shapes.size(); ++j) {
      CHECK(r.distances[g].values[j] == shape_geodesic(reference, groups[g].shapes[j]));
    }
  }
}

TEST_CASE("control chart") {
  std::mt19937_64 rng(59);
  Vec phase1(10000), phase2(10000);
  for (auto& v : phase1) v = 5.0 + gaussian(rng, 0.3);
  for (auto& v : phase2) v = 5.0 + gaussian(rng, 0.3);
  const ControlChart chart = control_chart(phase1, phase2);
  const double rate = static_cast<double>(chart.signal_count()) / static_cast<double>(phase2.size());
  MESSAGE("false-alarm rate " << rate);
  CHECK(std::abs(rate - 0.0027) < 0.002);
  CHECK(chart.upper_limit - chart.center == doctest::Approx(3.0 * chart.average_moving_range / 1.128));

  const Vec spike = {chart.center + 10.0 * chart.sigma};
  CHECK(control_chart(phase1, spike).out_of_control[0]);

  const Vec flat(25, 1.5);
  const Vec probes = {1.5, 1.5 + 1e-12, 1.5 - 1e-12};
  const ControlChart degenerate = control_chart(flat, probes);
  CHECK(degenerate.upper_limit == 1.5);
  CHECK(degenerate.lower_limit == 1.5);
  CHECK(degenerate.out_of_control == std::vector<bool>{false, true, true});

  const Vec short_phase(19, 1.0);
  CHECK_THROWS_AS(control_chart(short_phase, probes), Error);
}
