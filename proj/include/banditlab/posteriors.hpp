#pragma once

// Closed-form posterior samplers under the location-scale priors
// pi(l, sigma) ∝ sigma^(-k).
//
// Uniform model: sigma is drawn first from its marginal posterior by inverse
// transform, then mu | sigma is uniform on an interval centered at the MLE.
// Gaussian model: the marginal posterior of mu is a non-standardized Student-t.
// In both cases the posterior depends on the data only through (mu_hat,
// sigma_hat) and n_k = n + k - 2. The truncated variants swap sigma_hat for a
// scale bounded below by a power of 1/n.

#include <string_view>

#include "banditlab/core.hpp"
#include "banditlab/reward_models.hpp"

namespace banditlab {

/// Exponent k of the prior sigma^(-k).
struct PriorK {
  double k = 0.0;

  friend bool operator==(const PriorK&, const PriorK&) = default;
};

enum class NamedPrior { UniformLS, Reference, Jeffreys, UniformLocationRate };

/// uniform-ls -> 0, reference -> 1, jeffreys -> 2. The flat prior on
/// (mu, 1/sigma) picks up the Jacobian sigma^(-2), so it maps to 2 as well.
PriorK prior_k_for(NamedPrior name);

NamedPrior parse_named_prior(std::string_view name);
std::string_view to_string(NamedPrior name);

/// n + k - 2, the shape parameter shared by both models' posteriors.
inline double posterior_shape(std::uint64_t n, PriorK prior) {
  return static_cast<double>(n) + prior.k - 2.0;
}

struct UniformPosteriorParams {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  double n_k = 1.0;
};

/// Posterior parameters from raw statistics (TS) or with the truncated scale (TS-T).
UniformPosteriorParams uniform_posterior(const UniformStats& stats, PriorK prior);
UniformPosteriorParams uniform_posterior_truncated(const UniformStats& stats, PriorK prior);

/// Marginal posterior density of sigma:
///   n_k (n_k + 1) sigma_hat^n_k (sigma - sigma_hat) / sigma^(n_k + 2),  sigma >= sigma_hat.
double uniform_sigma_pdf(double sigma, const UniformPosteriorParams& params);

/// CDF of the density above:
///   1 - (n_k + 1) rho^n_k + n_k rho^(n_k + 1),  rho = sigma_hat / sigma.
double uniform_sigma_cdf(double sigma, const UniformPosteriorParams& params);

/// Inverse transform: the sigma with uniform_sigma_cdf(sigma) = u.
///
/// Solved for t = log(sigma / sigma_hat) on log F (u <= 1/2) or log(1 - F)
/// (u > 1/2), so both tails keep full relative precision. Bisection on a
/// closed-form bracket guarantees convergence; Halley steps accelerate it.
double uniform_sample_sigma(double u, const UniformPosteriorParams& params);

/// mu | sigma_tilde is uniform on [mu_hat - w/2, mu_hat + w/2] with
/// w = sigma_tilde - sigma_hat; u in [0, 1] picks the point.
double uniform_sample_mu(double u, double mu_hat, double sigma_hat, double sigma_tilde);

/// max(x_max - x_min, 1/n); requires n >= 1.
double uniform_truncated_scale(const UniformStats& stats);

/// sqrt(max(1, css) / n); requires n >= 1.
double gaussian_truncated_scale(const GaussianStats& stats);

/// Non-standardized Student-t: loc + scale * T_df.
struct GaussianPosteriorParams {
  double loc = 0.0;
  double scale = 1.0;
  double df = 1.0;
};

/// Marginal posterior of mu: integrating sigma out of
/// sigma^(-n-k) exp(-(S + n (mu - x_bar)^2) / (2 sigma^2)) leaves
/// (1 + n (mu - x_bar)^2 / S)^(-(n_k + 1) / 2), a t law with n_k degrees of
/// freedom, location x_bar and scale sigma_hat / sqrt(n_k).
GaussianPosteriorParams gaussian_posterior_from_scale(const GaussianStats& stats, double sigma,
                                                      PriorK prior);

/// sigma = sqrt(S / n).
GaussianPosteriorParams gaussian_posterior(const GaussianStats& stats, PriorK prior);
/// sigma = gaussian_truncated_scale(stats).
GaussianPosteriorParams gaussian_posterior_truncated(const GaussianStats& stats, PriorK prior);

/// loc + scale * T with T ~ Student-t(df).
double gaussian_sample_mu(Rng& rng, const GaussianPosteriorParams& params);

/// Replacement for an exactly-zero scale estimate (tied rewards):
/// machine epsilon times max(1, |location|).
double degenerate_scale_floor(double location);

}  // namespace banditlab
