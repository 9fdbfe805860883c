#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace tcss {

/// Pearson statistic of `counts` against the uniform distribution.
inline double chi_square_uniform(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

/// Upper 1% critical value of chi-square with `df` degrees of freedom
/// (Wilson-Hilferty; within 0.2% of the exact quantile for df >= 6).
inline double chi_square_critical_99(std::uint64_t df) {
  constexpr double z99 = 2.3263478740408408;
  double d = static_cast<double>(df);
  double u = 1.0 - 2.0 / (9.0 * d) + z99 * std::sqrt(2.0 / (9.0 * d));
  return d * u * u * u;
}

struct UniformityCheck {
  double statistic;
  double critical;
  bool pass;
};

inline UniformityCheck check_uniform(std::span<const std::uint64_t> counts) {
  double stat = chi_square_uniform(counts);
  double crit = chi_square_critical_99(counts.size() - 1);
  return {stat, crit, stat < crit};
}

}  // namespace tcss
