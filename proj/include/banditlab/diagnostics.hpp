#pragma once

// Sampler goodness-of-fit checks and the Dirac-arm growth diagnostic.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "banditlab/harness.hpp"

namespace banditlab {

/// Two-sided Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and a continuous CDF. Sorts `samples` in place.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// 5% critical value of the one-sample KS statistic, 1.36 / sqrt(n).
inline double ks_critical_value(std::uint64_t n) {
  return 1.36 / std::sqrt(static_cast<double>(n));
}

/// Closed-form marginal CDF of mu under the uniform-model joint posterior:
/// 1/2 (sigma_hat / (sigma_hat + 2|mu - mu_hat|))^n_k below mu_hat, mirrored above.
double uniform_mu_marginal_cdf(double mu, double mu_hat, double sigma_hat, double n_k);

struct CheckLine {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  /// Statistic must be below threshold when true, at least threshold otherwise.
  bool upper = true;
  bool pass = false;
};

struct SamplerReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckLine> checks;

  bool all_pass() const;
};

/// KS distances of the sigma sampler for n_k in {1, 2, 5} and of the mu
/// marginal at n_k = 3 (sigma_hat = 1, critical value 1.36/sqrt(N)), plus
/// variance (df = 5), symmetry and median (df = 1) checks of the t sampler.
SamplerReport check_samplers(std::uint64_t samples, std::uint64_t seed);

struct DiracDiagnosticResult {
  double k = 0.0;
  RegretTrace trace;
  double exponent = 0.0;
  /// Final mean regret divided by log(T).
  double regret_per_log_t = 0.0;
  /// "pass", "fail" or "report-only".
  std::string verdict;
};

/// Two uniform arms on [0, 1] and [0, 0.1]; arm 2 is a Dirac arm. Runs TS(k)
/// and fits the growth exponent of the mean regret over [T/100, T].
/// Verdict: k < 1 passes when exponent <= 0.2; k >= 2 passes when
/// exponent >= 0.4; anything in between is report-only.
DiracDiagnosticResult run_dirac_diagnostic(double k, std::uint64_t horizon, std::uint64_t runs,
                                           std::uint64_t seed, unsigned workers = 1);

}  // namespace banditlab
