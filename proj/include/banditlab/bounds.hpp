#pragma once

// Asymptotic regret lower bound: any uniformly good
// policy has liminf E[Reg(T)] / log T >= sum_i gap_i / KLinf_i, where KLinf_i
// is the smallest KL divergence from arm i's law to a law of the same family
// whose mean beats the best arm. Both families here have closed forms.

#include <cstdint>
#include <vector>

#include "banditlab/core.hpp"

namespace banditlab {

/// log(1 + 2 gap / sigma).
double klinf_uniform(double gap, double sigma);

/// 0.5 log(1 + (gap / sigma)^2).
double klinf_gaussian(double gap, double sigma);

double klinf(Model model, double gap, double sigma);

/// sum over arms with a strictly positive gap of gap / KLinf. Arms tied with
/// the best mean contribute nothing.
double lb_coefficient(const BanditInstance& instance);

struct LowerBoundCurve {
  std::vector<double> t_grid;
  std::vector<double> values;
};

/// coefficient * log(t) on an ascending grid of positive rounds.
LowerBoundCurve lb_curve(const BanditInstance& instance, const std::vector<double>& t_grid);

/// 1 followed by roughly `per_decade` log-spaced integer rounds up to and
/// including `horizon`.
std::vector<double> log_spaced_grid(std::uint64_t horizon, int per_decade = 20);

}  // namespace banditlab
