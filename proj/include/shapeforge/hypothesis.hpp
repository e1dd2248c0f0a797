#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "shapeforge/execution.hpp"

namespace shapeforge {

/// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

/// Welch's unequal-variance two-sample t-test, two-sided. Two constant
/// samples give p = 1 when their means agree and p = 0 otherwise.
TTestResult two_sample_ttest(std::span<const double> a, std::span<const double> b);

/// Two-sided permutation test on the difference of means:
/// p = (1 + #{|diff_perm| >= |diff_obs|}) / (n_perm + 1).
/// Permutations are split into fixed blocks with seed-derived streams, so the
/// result does not depend on thread count or execution mode.
double permutation_test(std::span<const double> a, std::span<const double> b, std::size_t n_perm,
                        std::uint64_t seed, Execution exec = Execution::parallel);

}  // namespace shapeforge
