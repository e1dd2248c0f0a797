#include "shapeforge/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "shapeforge/error.hpp"

namespace shapeforge {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::convergence, "incomplete beta continued fraction did not converge");
}

double sample_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, bound) (Lemire). mt19937_64 output is fully specified,
// so the stream is identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  __uint128_t m = static_cast<__uint128_t>(rng()) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

constexpr std::size_t kPermutationBlocks = 64;

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "incomplete beta needs positive shape parameters");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "incomplete beta argument outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::invalid_argument, "degrees of freedom must be positive");
  if (std::isnan(t)) throw Error(ErrorKind::invalid_argument, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

TTestResult two_sample_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "t-test needs at least two values per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = sample_mean(a);
  const double mb = sample_mean(b);
  const double va = sample_variance(a, ma) / na;
  const double vb = sample_variance(b, mb) / nb;
  const double se2 = va + vb;

  TTestResult r;
  if (se2 == 0.0) {
    r.df = na + nb - 2.0;
    if (ma == mb) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = ma > mb ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

double permutation_test(std::span<const double> a, std::span<const double> b, std::size_t n_perm,
                        std::uint64_t seed, Execution exec) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "permutation test needs at least two values per sample");
  }
  if (n_perm < 100) throw Error(ErrorKind::invalid_argument, "permutation test needs n_perm >= 100");

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t na = a.size();
  const double total = [&] {
    double s = 0.0;
    for (double v : pooled) s += v;
    return s;
  }();
  const double observed = std::abs(sample_mean(a) - sample_mean(b));
  const double slack = 1e-12 * std::max(1.0, observed);

  std::vector<std::size_t> hits(kPermutationBlocks, 0);
  auto run_block = [&](std::size_t block) {
    const std::size_t begin = block * n_perm / kPermutationBlocks;
    const std::size_t end = (block + 1) * n_perm / kPermutationBlocks;
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(block + 1)));
    std::vector<double> work = pooled;
    std::size_t count = 0;
    for (std::size_t k = begin; k < end; ++k) {
      double sum_a = 0.0;
      for (std::size_t i = 0; i < na; ++i) {
        const std::size_t j = i + bounded(rng, work.size() - i);
        std::swap(work[i], work[j]);
        sum_a += work[i];
      }
      const double diff = sum_a / static_cast<double>(na) -
                          (total - sum_a) / static_cast<double>(work.size() - na);
      if (std::abs(diff) >= observed - slack) ++count;
    }
    hits[block] = count;
  };

  const long blocks = static_cast<long>(kPermutationBlocks);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long blk = 0; blk < blocks; ++blk) run_block(static_cast<std::size_t>(blk));
  } else {
    for (long blk = 0; blk < blocks; ++blk) run_block(static_cast<std::size_t>(blk));
  }
  std::size_t extreme = 0;
  for (auto h : hits) extreme += h;
  return static_cast<double>(1 + extreme) / static_cast<double>(n_perm + 1);
}

}  // namespace shapeforge
