#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "banditlab/core.hpp"

namespace banditlab {

/// Support endpoints (a, b) of the uniform law with center mu and width sigma.
std::pair<double, double> uniform_ab_from_ls(double mu, double sigma);

/// Inverse of uniform_ab_from_ls: (mu, sigma) = ((a + b) / 2, b - a).
std::pair<double, double> uniform_ls_from_ab(double a, double b);

/// One reward draw from arm `arm_index` of `instance`.
double sample_reward(const BanditInstance& instance, std::size_t arm_index, Rng& rng);

/// Running (count, min, max) of uniform rewards.
struct UniformStats {
  std::uint64_t n = 0;
  double x_min = 0.0;
  double x_max = 0.0;

  double mle_mu() const { return 0.5 * (x_min + x_max); }
  double mle_sigma() const { return x_max - x_min; }

  friend bool operator==(const UniformStats&, const UniformStats&) = default;
};

UniformStats update_uniform_stats(UniformStats stats, double x);

/// Combine two disjoint samples' statistics.
UniformStats merge(const UniformStats& lhs, const UniformStats& rhs);

/// Running (count, mean, centered sum of squares) of Gaussian rewards,
/// maintained by Welford's update.
struct GaussianStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double css = 0.0;

  double mle_mu() const { return mean; }
  double mle_sigma() const;

  friend bool operator==(const GaussianStats&, const GaussianStats&) = default;
};

GaussianStats update_gaussian_stats(GaussianStats stats, double x);

}  // namespace banditlab
