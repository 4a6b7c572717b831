#include "banditlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace banditlab {

namespace {

void check_args(double gap, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("KL infimum: sigma must be > 0");
  if (!(gap >= 0.0)) throw std::invalid_argument("KL infimum: gap must be >= 0");
}

}  // namespace

double klinf_uniform(double gap, double sigma) {
  check_args(gap, sigma);
  return std::log1p(2.0 * gap / sigma);
}

double klinf_gaussian(double gap, double sigma) {
  check_args(gap, sigma);
  const double r = gap / sigma;
  return 0.5 * std::log1p(r * r);
}

double klinf(Model model, double gap, double sigma) {
  return model == Model::Uniform ? klinf_uniform(gap, sigma) : klinf_gaussian(gap, sigma);
}

double lb_coefficient(const BanditInstance& instance) {
  const GapVector gv = gap_vector(instance);
  double total = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double gap = gv.gaps[i];
    if (gap > 0.0) total += gap / klinf(instance.model(), gap, instance.arm(i).sigma);
  }
  return total;
}

LowerBoundCurve lb_curve(const BanditInstance& instance, const std::vector<double>& t_grid) {
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    if (!(t_grid[j] > 0.0)) throw std::invalid_argument("lb_curve: rounds must be positive");
    if (j > 0 && !(t_grid[j] > t_grid[j - 1])) {
      throw std::invalid_argument("lb_curve: grid must be strictly ascending");
    }
  }
  const double c = lb_coefficient(instance);
  LowerBoundCurve curve;
  curve.t_grid = t_grid;
  curve.values.reserve(t_grid.size());
  for (double t : t_grid) curve.values.push_back(t < 1.0 ? 0.0 : c * std::log(t));
  return curve;
}

std::vector<double> log_spaced_grid(std::uint64_t horizon, int per_decade) {
  if (horizon == 0) throw std::invalid_argument("log_spaced_grid: horizon must be >= 1");
  if (per_decade < 1) throw std::invalid_argument("log_spaced_grid: per_decade must be >= 1");
  std::vector<double> grid{1.0};
  const double h = static_cast<double>(horizon);
  for (int j = 1;; ++j) {
    const double t = std::round(std::pow(10.0, static_cast<double>(j) / per_decade));
    if (t >= h) break;
    if (t > grid.back()) grid.push_back(t);
  }
  if (h > grid.back()) grid.push_back(h);
  return grid;
}

}  // namespace banditlab
