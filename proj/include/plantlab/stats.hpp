#pragma once

#include <cstdint>
#include <vector>

namespace plantlab {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of `observed` against the uniform law on its cells.
ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& observed);

/// Pearson test of homogeneity for two samples tabulated on the same cells.
/// Cells empty in both samples are dropped.
ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Wilson score interval for a binomial proportion at level 1 - alpha.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha = 0.05);

/// Two-sided standard normal quantile z_{1 - alpha/2}.
double normal_quantile_two_sided(double alpha);

}  // namespace plantlab
