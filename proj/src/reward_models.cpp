#include "banditlab/reward_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "banditlab/random.hpp"

namespace banditlab {

std::pair<double, double> uniform_ab_from_ls(double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("uniform_ab_from_ls: sigma must be > 0");
  }
  return {mu - 0.5 * sigma, mu + 0.5 * sigma};
}

std::pair<double, double> uniform_ls_from_ab(double a, double b) {
  if (!(a < b)) {
    throw std::invalid_argument("uniform_ls_from_ab: requires a < b");
  }
  return {0.5 * (a + b), b - a};
}

double sample_reward(const BanditInstance& instance, std::size_t arm_index, Rng& rng) {
  const Arm& arm = instance.arm(arm_index);
  switch (instance.model()) {
    case Model::Uniform: {
      // the clamp only matters when a + sigma * U rounds past b
      const double a = arm.mu - 0.5 * arm.sigma;
      const double x = a + arm.sigma * uniform_open01(rng);
      return std::min(x, arm.mu + 0.5 * arm.sigma);
    }
    case Model::Gaussian:
      return arm.mu + arm.sigma * standard_normal(rng);
  }
  throw std::logic_error("sample_reward: unhandled model");
}

UniformStats update_uniform_stats(UniformStats stats, double x) {
  if (stats.n == 0) {
    stats.x_min = x;
    stats.x_max = x;
  } else {
    stats.x_min = std::min(stats.x_min, x);
    stats.x_max = std::max(stats.x_max, x);
  }
  ++stats.n;
  return stats;
}

UniformStats merge(const UniformStats& lhs, const UniformStats& rhs) {
  if (lhs.n == 0) return rhs;
  if (rhs.n == 0) return lhs;
  return {lhs.n + rhs.n, std::min(lhs.x_min, rhs.x_min), std::max(lhs.x_max, rhs.x_max)};
}

double GaussianStats::mle_sigma() const {
  return n == 0 ? 0.0 : std::sqrt(css / static_cast<double>(n));
}

GaussianStats update_gaussian_stats(GaussianStats stats, double x) {
  ++stats.n;
  const double delta = x - stats.mean;
  stats.mean += delta / static_cast<double>(stats.n);
  stats.css += delta * (x - stats.mean);
  if (stats.css < 0.0) stats.css = 0.0;
  return stats;
}

}  // namespace banditlab
