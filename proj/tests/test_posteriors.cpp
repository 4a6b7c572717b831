#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "banditlab/diagnostics.hpp"
#include "banditlab/posteriors.hpp"
#include "banditlab/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace banditlab;
using doctest::Approx;

TEST_SUITE("posteriors") {
  TEST_CASE("named priors") {
    CHECK(prior_k_for(NamedPrior::UniformLS).k == 0.0);
    CHECK(prior_k_for(NamedPrior::Reference).k == 1.0);
    CHECK(prior_k_for(NamedPrior::Jeffreys).k == 2.0);
    CHECK(prior_k_for(NamedPrior::UniformLocationRate).k == 2.0);
    for (NamedPrior p : {NamedPrior::UniformLS, NamedPrior::Reference, NamedPrior::Jeffreys,
                         NamedPrior::UniformLocationRate}) {
      CHECK(parse_named_prior(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_named_prior("flat"), std::invalid_argument);
    CHECK(posterior_shape(5, PriorK{0.5}) == 3.5);
  }

  TEST_CASE("sigma CDF endpoints and the n_k = 2 midpoint") {
    const UniformPosteriorParams p{0.0, 1.0, 2.0};
    CHECK(uniform_sigma_cdf(1.0, p) == 0.0);
    CHECK(uniform_sigma_cdf(0.5, p) == 0.0);
    CHECK(uniform_sigma_cdf(std::numeric_limits<double>::infinity(), p) == 1.0);
    CHECK(uniform_sigma_cdf(1e12, p) == Approx(1.0).epsilon(1e-10));
    CHECK(uniform_sigma_cdf(2.0, p) == Approx(0.5).epsilon(1e-15));
    // the same value from quadrature of the joint posterior (n + k = n_k + 2)
    CHECK(oracle::uniform_sigma_cdf(2.0, 1.0, 4.0) == Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("sigma CDF agrees with quadrature of the joint posterior") {
    for (double n_k : {0.5, 1.0, 2.0, 3.5, 7.0}) {
      for (double sigma_hat : {0.25, 1.0, 3.0}) {
        const UniformPosteriorParams p{1.0, sigma_hat, n_k};
        for (double ratio : {1.01, 1.3, 2.0, 5.0}) {
          const double x = sigma_hat * ratio;
          CAPTURE(n_k);
          CAPTURE(x);
          CHECK(uniform_sigma_cdf(x, p) ==
                Approx(oracle::uniform_sigma_cdf(x, sigma_hat, n_k + 2.0)).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("sigma CDF is monotone and its derivative is the density") {
    for (double n_k : {1.0, 2.0, 4.5, 40.0}) {
      const UniformPosteriorParams p{0.0, 1.0, n_k};
      double prev = 0.0;
      for (int i = 1; i < 400; ++i) {
        const double x = 1.0 + 0.02 * i;
        const double c = uniform_sigma_cdf(x, p);
        REQUIRE(c >= prev);
        prev = c;
        const double pdf = uniform_sigma_pdf(x, p);
        const double h = 2e-4 * x;
        // Skip points where rounding in the differenced CDF values alone
        // exceeds 1e-7 of the density.
        if (4.0 * std::numeric_limits<double>::epsilon() / (h * pdf) > 1e-7) continue;
        auto F = [&](double s) { return uniform_sigma_cdf(s, p); };
        const double fd = (F(x - 2 * h) - 8.0 * F(x - h) + 8.0 * F(x + h) - F(x + 2 * h)) / (12.0 * h);
        CAPTURE(n_k);
        CAPTURE(x);
        REQUIRE(std::abs(fd - pdf) / pdf < 1e-6);
      }
    }
  }

  TEST_CASE("improper posteriors are rejected") {
    CHECK_THROWS_AS(uniform_sigma_cdf(2.0, {0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(uniform_sigma_cdf(2.0, {0.0, 1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(uniform_sample_sigma(0.5, {0.0, 1.0, 0.0}), std::invalid_argument);
  }

  TEST_CASE("sigma inverse transform examples") {
    const UniformPosteriorParams p{0.0, 1.0, 2.0};
    CHECK(uniform_sample_sigma(0.5, p) == Approx(2.0).epsilon(1e-13));
    const double near_zero = uniform_sample_sigma(1e-12, p);
    CHECK(near_zero >= 1.0);
    CHECK(near_zero < 1.0 + 1e-5);
    CHECK_THROWS_AS(uniform_sample_sigma(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(uniform_sample_sigma(1.0, p), std::invalid_argument);
    CHECK_THROWS_AS(uniform_sample_sigma(-0.1, p), std::invalid_argument);
    CHECK_THROWS_AS(uniform_sample_sigma(0.5, {0.0, 0.0, 2.0}), std::invalid_argument);
  }

  TEST_CASE("inverse transform round trips") {
    for (double n_k : {0.5, 1.0, 2.0, 3.0, 17.5, 1000.0, 1e6}) {
      const UniformPosteriorParams p{0.0, 1.5, n_k};
      for (double u : {1e-15, 1e-9, 1e-4, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-9}) {
        const double s = uniform_sample_sigma(u, p);
        CAPTURE(n_k);
        CAPTURE(u);
        REQUIRE(s >= p.sigma_hat);
        const double back = uniform_sigma_cdf(s, p);
        // Compare in the tail that carries the precision. Near sigma_hat, u is
        // ill-conditioned in sigma, so the lower tail checks that the exact
        // root lies within 1e-12 relative of the returned sigma.
        if (u <= 0.5) {
          REQUIRE(uniform_sigma_cdf(s * (1.0 - 1e-12), p) <= u);
          REQUIRE(uniform_sigma_cdf(s * (1.0 + 1e-12), p) >= u);
        } else {
          REQUIRE(std::abs((1.0 - back) - (1.0 - u)) <= 1e-9 * (1.0 - u) + 1e-16);
        }
      }
      for (double ratio : {1.0001, 1.1, 2.0, 10.0}) {
        const double x = p.sigma_hat * ratio;
        const double u = uniform_sigma_cdf(x, p);
        if (!(u > 0.0 && u < 1.0)) continue;
        REQUIRE(uniform_sample_sigma(u, p) == Approx(x).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("inverse transform draws pass a KS test") {
    for (double n_k : {1.0, 2.5, 5.0}) {
      Rng rng = make_run_rng({11, static_cast<std::uint64_t>(n_k * 10)});
      const UniformPosteriorParams p{0.0, 1.0, n_k};
      std::vector<double> xs(100000);
      for (double& x : xs) x = uniform_sample_sigma(uniform_open01(rng), p);
      CHECK(ks_distance(xs, [&](double s) { return uniform_sigma_cdf(s, p); }) < 0.006);
    }
  }

  TEST_CASE("mu given sigma") {
    CHECK(uniform_sample_mu(0.9, 2.0, 1.0, 1.0) == 2.0);
    CHECK(uniform_sample_mu(0.5, -3.0, 1.0, 4.0) == -3.0);
    // mu_hat = 0, sigma_hat = 1 means x(1) = -0.5 and x(n) = 0.5; the upper end
    // of the interval is x(1) + sigma_tilde / 2 = 1.
    CHECK(uniform_sample_mu(1.0 - 1e-12, 0.0, 1.0, 3.0) == Approx(1.0).epsilon(1e-10));
    CHECK(uniform_sample_mu(1e-12, 0.0, 1.0, 3.0) == Approx(-1.0).epsilon(1e-10));
    CHECK_THROWS_AS(uniform_sample_mu(0.5, 0.0, 2.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("truncated scales") {
    CHECK(uniform_truncated_scale(UniformStats{10, 0.0, 0.05}) == Approx(0.1));
    CHECK(uniform_truncated_scale(UniformStats{10, 0.0, 0.5}) == 0.5);
    CHECK(uniform_truncated_scale(UniformStats{2, 0.3, 0.3}) == 0.5);
    CHECK(gaussian_truncated_scale(GaussianStats{4, 0.0, 0.5}) == 0.5);
    CHECK(gaussian_truncated_scale(GaussianStats{4, 0.0, 4.0}) == 1.0);
    CHECK(gaussian_truncated_scale(GaussianStats{1, 7.0, 0.0}) == 1.0);
    CHECK_THROWS_AS(uniform_truncated_scale(UniformStats{}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_truncated_scale(GaussianStats{}), std::invalid_argument);
  }

  TEST_CASE("truncation is inert when the raw scale is large enough") {
    const UniformStats u{8, -0.2, 0.3};  // 0.5 >= 1/8
    CHECK(uniform_posterior(u, PriorK{1.0}).sigma_hat ==
          uniform_posterior_truncated(u, PriorK{1.0}).sigma_hat);
    const GaussianStats g{5, 1.0, 2.5};  // S >= 1
    const auto a = gaussian_posterior(g, PriorK{0.0});
    const auto b = gaussian_posterior_truncated(g, PriorK{0.0});
    CHECK(a.scale == b.scale);
    CHECK(a.loc == b.loc);
    CHECK(a.df == b.df);
    Rng r1 = make_run_rng({5, 5});
    Rng r2 = make_run_rng({5, 5});
    for (int i = 0; i < 100; ++i) REQUIRE(gaussian_sample_mu(r1, a) == gaussian_sample_mu(r2, b));
  }

  TEST_CASE("Gaussian posterior matches the marginal of the joint posterior") {
    // sigma^(-(n + k)) exp(-(S + n (mu - x_bar)^2) / (2 sigma^2)), integrated
    // over sigma by quadrature, compared with the t density the sampler uses.
    const GaussianStats stats{6, 0.4, 3.0};
    for (double k : {0.0, 1.0, 2.0, 0.5}) {
      const GaussianPosteriorParams p = gaussian_posterior(stats, PriorK{k});
      CHECK(p.df == 6.0 + k - 2.0);
      auto joint_marginal = [&](double mu) {
        const double a = stats.css + 6.0 * (mu - stats.mean) * (mu - stats.mean);
        // substitute sigma = 1 / r
        return oracle::simpson(
            [&](double r) {
              if (r <= 0.0) return 0.0;
              return std::pow(r, 6.0 + k - 2.0) * std::exp(-0.5 * a * r * r);
            },
            0.0, 40.0, 20000);
      };
      auto t_density = [&](double mu) {
        const double z = (mu - p.loc) / p.scale;
        return std::pow(1.0 + z * z / p.df, -0.5 * (p.df + 1.0));
      };
      for (double mu : {0.9, 1.5, -0.6}) {
        CAPTURE(k);
        CAPTURE(mu);
        CHECK(joint_marginal(mu) / joint_marginal(stats.mean) ==
              Approx(t_density(mu) / t_density(stats.mean)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("t sampler symmetry, variance and median") {
    const int n = 100000;
    Rng rng = make_run_rng({21, 0});
    const GaussianPosteriorParams sym{3.0, 2.0, 5.0};
    int above = 0;
    for (int i = 0; i < n; ++i) above += gaussian_sample_mu(rng, sym) >= 3.0;
    CHECK(std::abs(above / double(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));

    std::vector<double> xs(n);
    for (double& x : xs) x = gaussian_sample_mu(rng, {0.0, 1.0, 5.0});
    const double var = oracle::two_pass_css(xs) / (n - 1.0);
    CHECK(std::abs(var - 5.0 / 3.0) / (5.0 / 3.0) < 0.05);

    for (double& x : xs) x = gaussian_sample_mu(rng, {-1.5, 1.0, 1.0});
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    CHECK(std::abs(xs[n / 2] + 1.5) < 3.0 * (std::numbers::pi / 2.0) / std::sqrt(n));
  }

  TEST_CASE("large df approaches the normal law") {
    const int n = 200000;
    Rng rng = make_run_rng({22, 0});
    std::vector<double> xs(n);
    double sum = 0.0;
    for (double& x : xs) sum += (x = gaussian_sample_mu(rng, {2.0, 0.5, 200.0}));
    const double mean = sum / n;
    const double var = oracle::two_pass_css(xs) / (n - 1.0);
    CHECK(std::abs(mean - 2.0) < 4.0 * 0.5 / std::sqrt(n));
    CHECK(std::abs(var - 0.25 * 200.0 / 198.0) / 0.25 < 0.02);
    double m4 = 0.0;
    for (double x : xs) m4 += std::pow((x - mean) / 0.5, 4);
    CHECK(std::abs(m4 / n - 3.0) < 0.15);  // normal kurtosis 3; t(200) is 3.03
  }

  TEST_CASE("t sampler argument checks") {
    Rng rng = make_run_rng({23, 0});
    CHECK_THROWS_AS(gaussian_sample_mu(rng, {0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_sample_mu(rng, {0.0, 0.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_posterior(GaussianStats{2, 0.0, 1.0}, PriorK{0.0}),
                    std::invalid_argument);
  }

  TEST_CASE("degenerate scale floor") {
    CHECK(degenerate_scale_floor(0.0) == std::numeric_limits<double>::epsilon());
    CHECK(degenerate_scale_floor(-4.0) == 4.0 * std::numeric_limits<double>::epsilon());
    const UniformPosteriorParams p{3.0, degenerate_scale_floor(3.0), 1.0};
    const double s = uniform_sample_sigma(0.5, p);
    CHECK(std::isfinite(s));
    CHECK(s > p.sigma_hat);
  }
}
