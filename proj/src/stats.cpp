#include "plantlab/stats.hpp"

#include "plantlab/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>

namespace plantlab {

ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  if (observed.size() < 2) throw InputError("chi-square test needs at least two cells");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  if (total == 0) throw InputError("chi-square test needs observations");
  const double expected = static_cast<double>(total) / static_cast<double>(observed.size());
  ChiSquareResult out;
  for (auto c : observed) {
    const double d = static_cast<double>(c) - expected;
    out.statistic += d * d / expected;
  }
  out.dof = static_cast<int>(observed.size()) - 1;
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw InputError("chi-square two-sample test needs equal cell counts");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw InputError("chi-square two-sample test needs observations in both samples");
  ChiSquareResult out;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double total = static_cast<double>(a[i] + b[i]);
    if (total == 0.0) continue;
    ++cells;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    out.statistic += (static_cast<double>(a[i]) - ea) * (static_cast<double>(a[i]) - ea) / ea;
    out.statistic += (static_cast<double>(b[i]) - eb) * (static_cast<double>(b[i]) - eb) / eb;
  }
  out.dof = cells - 1;
  if (out.dof < 1) return out;
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

double normal_quantile_two_sided(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0,1)");
  return boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha) {
  if (trials == 0) throw InputError("wilson_interval: no trials");
  const double z = normal_quantile_two_sided(alpha);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace plantlab
