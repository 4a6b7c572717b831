#include "banditlab/policies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "banditlab/random.hpp"

namespace banditlab {

std::string_view to_string(PolicyKind kind) {
  return kind == PolicyKind::TS ? "ts" : "tst";
}

PolicyConfig parse_policy_spec(std::string_view spec, Model model) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("policy spec '" + std::string(spec) +
                                "' must look like ts:k=<real> or tst:<prior>");
  }
  const std::string_view kind_str = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  PolicyConfig config;
  config.model = model;
  if (kind_str == "ts") {
    config.kind = PolicyKind::TS;
  } else if (kind_str == "tst") {
    config.kind = PolicyKind::TST;
  } else {
    throw std::invalid_argument("unknown policy kind '" + std::string(kind_str) + "'");
  }

  if (rest.starts_with("k=")) {
    const std::string number(rest.substr(2));
    std::size_t used = 0;
    double k = 0.0;
    try {
      k = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size() || !std::isfinite(k)) {
      throw std::invalid_argument("invalid prior exponent in '" + std::string(spec) + "'");
    }
    config.prior = PriorK{k};
  } else {
    config.prior = prior_k_for(parse_named_prior(rest));
  }
  return config;
}

std::string to_spec(const PolicyConfig& config) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), config.prior.k);
  return std::string(to_string(config.kind)) + ":k=" + std::string(buf, res.ptr);
}

PolicyState::PolicyState(Model m, std::size_t num_arms)
    : model(m), plays(num_arms, 0) {
  if (model == Model::Uniform) {
    uniform.resize(num_arms);
  } else {
    gaussian.resize(num_arms);
  }
}

void PolicyState::observe(std::size_t arm, double reward) {
  if (model == Model::Uniform) {
    uniform[arm] = update_uniform_stats(uniform[arm], reward);
  } else {
    gaussian[arm] = update_gaussian_stats(gaussian[arm], reward);
  }
  ++plays[arm];
  ++round;
}

std::uint64_t initial_play_count(Model model, PriorK prior) {
  const double k = prior.k;
  double n0 = 0.0;
  if (model == Model::Uniform) {
    n0 = std::max(2.0, 3.0 - std::ceil(k));
  } else {
    n0 = std::max(2.0, std::ceil(3.0 - k));
  }
  return static_cast<std::uint64_t>(n0);
}

ArmDraw sample_arm(PolicyState& state, const PolicyConfig& config, std::size_t arm, Rng& rng) {
  const bool truncated = config.kind == PolicyKind::TST;
  if (state.model == Model::Uniform) {
    const UniformStats& s = state.uniform[arm];
    UniformPosteriorParams p = truncated ? uniform_posterior_truncated(s, config.prior)
                                         : uniform_posterior(s, config.prior);
    if (s.mle_sigma() < 1.0 / static_cast<double>(s.n)) state.truncation_binding = true;
    if (p.sigma_hat == 0.0) {
      p.sigma_hat = degenerate_scale_floor(p.mu_hat);
      ++state.degenerate_scale_events;
    }
    const double sigma = uniform_sample_sigma(uniform_open01(rng), p);
    const double mu = uniform_sample_mu(uniform_open01(rng), p.mu_hat, p.sigma_hat, sigma);
    return {mu, sigma};
  }
  const GaussianStats& s = state.gaussian[arm];
  double sigma = truncated ? gaussian_truncated_scale(s) : s.mle_sigma();
  if (s.css < 1.0) state.truncation_binding = true;
  if (sigma == 0.0) {
    sigma = degenerate_scale_floor(s.mean);
    ++state.degenerate_scale_events;
  }
  return {gaussian_sample_mu(rng, gaussian_posterior_from_scale(s, sigma, config.prior)), sigma};
}

std::size_t select_argmax(const std::vector<double>& values, Rng& rng) {
  std::size_t best = 0;
  std::size_t ties = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
      ties = 1;
    } else if (values[i] == values[best]) {
      ++ties;
    }
  }
  if (ties == 1) return best;
  std::uint64_t pick = uniform_index(rng, ties);
  for (std::size_t i = best; i < values.size(); ++i) {
    if (values[i] == values[best] && pick-- == 0) return i;
  }
  return best;
}

std::size_t ts_select(PolicyState& state, const PolicyConfig& config, Rng& rng,
                      const ArmOverrides& overrides) {
  const std::size_t k = state.num_arms();
  if (!overrides.empty() && overrides.size() != k) {
    throw std::invalid_argument("ts_select: overrides must be empty or one per arm");
  }
  const std::uint64_t n0 = initial_play_count(config.model, config.prior);
  std::vector<double> index(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!overrides.empty() && overrides[i]) {
      index[i] = overrides[i]->index();
      continue;
    }
    if (state.observations(i) < n0) {
      throw std::logic_error("ts_select: arm " + std::to_string(i) + " has " +
                             std::to_string(state.observations(i)) + " observations, needs " +
                             std::to_string(n0));
    }
    index[i] = sample_arm(state, config, i, rng).mu;
  }
  return select_argmax(index, rng);
}

std::vector<std::size_t> run_initial_phase(PolicyState& state, const PolicyConfig& config,
                                           const BanditInstance& instance, Rng& rng) {
  if (state.round != 1) {
    throw std::logic_error("run_initial_phase: state must be fresh");
  }
  const std::uint64_t n0 = initial_play_count(config.model, config.prior);
  std::vector<std::size_t> order;
  order.reserve(n0 * instance.size());
  for (std::uint64_t rep = 0; rep < n0; ++rep) {
    for (std::size_t arm = 0; arm < instance.size(); ++arm) {
      state.observe(arm, sample_reward(instance, arm, rng));
      order.push_back(arm);
    }
  }
  return order;
}

}  // namespace banditlab
