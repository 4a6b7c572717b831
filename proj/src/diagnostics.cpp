#include "banditlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "banditlab/posteriors.hpp"
#include "banditlab/random.hpp"
#include "banditlab/serialization.hpp"

namespace banditlab {

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double uniform_mu_marginal_cdf(double mu, double mu_hat, double sigma_hat, double n_k) {
  const double tail = 0.5 * std::pow(sigma_hat / (sigma_hat + 2.0 * std::abs(mu - mu_hat)), n_k);
  return mu <= mu_hat ? tail : 1.0 - tail;
}

bool SamplerReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

namespace {

CheckLine below(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, true, statistic < threshold};
}

}  // namespace

SamplerReport check_samplers(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("check_samplers: need at least 2 samples");
  SamplerReport report;
  report.samples = samples;
  report.seed = seed;
  const double n = static_cast<double>(samples);
  const double ks_crit = ks_critical_value(samples);
  std::uint64_t stream = 0;

  for (double n_k : {1.0, 2.0, 5.0}) {
    Rng rng = make_run_rng({seed, stream++});
    const UniformPosteriorParams p{0.0, 1.0, n_k};
    std::vector<double> draws(samples);
    for (double& x : draws) x = uniform_sample_sigma(uniform_open01(rng), p);
    const double d = ks_distance(draws, [&](double s) { return uniform_sigma_cdf(s, p); });
    report.checks.push_back(below("uniform sigma KS (n_k=" + format_double(n_k) + ")", d, ks_crit));
  }

  {
    Rng rng = make_run_rng({seed, stream++});
    const UniformPosteriorParams p{0.0, 1.0, 3.0};
    std::vector<double> draws(samples);
    for (double& x : draws) {
      const double sigma = uniform_sample_sigma(uniform_open01(rng), p);
      x = uniform_sample_mu(uniform_open01(rng), p.mu_hat, p.sigma_hat, sigma);
    }
    const double d = ks_distance(
        draws, [&](double m) { return uniform_mu_marginal_cdf(m, p.mu_hat, p.sigma_hat, p.n_k); });
    report.checks.push_back(below("uniform mu marginal KS (n_k=3)", d, ks_crit));
  }

  {
    Rng rng = make_run_rng({seed, stream++});
    const GaussianPosteriorParams p{0.0, 1.0, 5.0};
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const double x = gaussian_sample_mu(rng, p);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1.0);
    const double expected = 5.0 / 3.0;
    report.checks.push_back(
        below("t variance rel. error (df=5)", std::abs(var - expected) / expected, 0.05));
  }

  {
    Rng rng = make_run_rng({seed, stream++});
    const GaussianPosteriorParams p{3.0, 2.0, 5.0};
    std::uint64_t above = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      if (gaussian_sample_mu(rng, p) >= p.loc) ++above;
    }
    const double freq = static_cast<double>(above) / n;
    report.checks.push_back(
        below("t symmetry |P(x>=loc)-1/2| (df=5)", std::abs(freq - 0.5), 3.0 * std::sqrt(0.25 / n)));
  }

  {
    Rng rng = make_run_rng({seed, stream++});
    const GaussianPosteriorParams p{-1.5, 1.0, 1.0};
    std::vector<double> draws(samples);
    for (double& x : draws) x = gaussian_sample_mu(rng, p);
    auto mid = draws.begin() + static_cast<std::ptrdiff_t>(draws.size() / 2);
    std::nth_element(draws.begin(), mid, draws.end());
    report.checks.push_back(below("t median |median-loc| (df=1)", std::abs(*mid - p.loc),
                                  3.0 * (std::numbers::pi / 2.0) / std::sqrt(n)));
  }
  return report;
}

DiracDiagnosticResult run_dirac_diagnostic(double k, std::uint64_t horizon, std::uint64_t runs,
                                           std::uint64_t seed, unsigned workers) {
  if (horizon < 200) throw std::invalid_argument("dirac diagnostic: horizon must be >= 200");
  ExperimentConfig config(dirac_diagnostic_instance(),
                          PolicyConfig{PolicyKind::TS, PriorK{k}, Model::Uniform});
  config.horizon = horizon;
  config.runs = runs;
  config.master_seed = seed;
  // Only the log-spaced points plus T, so the fit weighs every decade equally.
  config.record_stride = horizon;
  config.diagnostic = Diagnostic::PinnedArm;

  DiracDiagnosticResult out;
  out.k = k;
  out.trace = run_experiment(config, workers);
  const double t = static_cast<double>(horizon);
  out.exponent = fit_growth_exponent(out.trace, t / 100.0, t);
  out.regret_per_log_t = out.trace.mean_regret.back() / std::log(t);
  if (k < 1.0) {
    out.verdict = out.exponent <= 0.2 ? "pass" : "fail";
  } else if (k >= 2.0) {
    out.verdict = out.exponent >= 0.4 ? "pass" : "fail";
  } else {
    out.verdict = "report-only";
  }
  return out;
}

}  // namespace banditlab
