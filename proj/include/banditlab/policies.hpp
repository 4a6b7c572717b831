#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/posteriors.hpp"
#include "banditlab/reward_models.hpp"

namespace banditlab {

/// Vanilla Thompson sampling or Thompson sampling with a truncated scale.
enum class PolicyKind { TS, TST };

std::string_view to_string(PolicyKind kind);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::TS;
  PriorK prior;
  Model model = Model::Uniform;

  /// TS with k >= 1 cannot reach the lower bound in either model; such
  /// configurations run normally and are only tagged in output metadata.
  bool known_suboptimal() const { return kind == PolicyKind::TS && prior.k >= 1.0; }

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Parses "ts:k=<real>", "tst:k=<real>" or "<ts|tst>:<prior-name>" with prior
/// names uniform-ls, reference, jeffreys, uniform-location-rate.
PolicyConfig parse_policy_spec(std::string_view spec, Model model);

/// Canonical "ts:k=<real>" form.
std::string to_spec(const PolicyConfig& config);

/// An arm whose sampled index is pinned to a known mean.
struct DiracArm {
  double fixed_mu = 0.0;

  double index() const { return fixed_mu; }
};

inline DiracArm make_dirac_arm(double mu) { return DiracArm{mu}; }

/// Optional per-arm index override; empty or one entry per arm.
using ArmOverrides = std::vector<std::optional<DiracArm>>;

/// Per-run mutable learner state.
struct PolicyState {
  PolicyState(Model model, std::size_t num_arms);

  Model model;
  std::vector<UniformStats> uniform;
  std::vector<GaussianStats> gaussian;
  std::vector<std::uint64_t> plays;
  /// Round about to be played; sum(plays) == round - 1.
  std::uint64_t round = 1;
  /// Draws that needed degenerate_scale_floor because the raw scale was 0.
  std::uint64_t degenerate_scale_events = 0;
  /// Set once any selection saw an arm whose truncated scale differs from its
  /// raw scale (sigma_hat < 1/N or S < 1).
  bool truncation_binding = false;

  std::size_t num_arms() const { return plays.size(); }
  std::uint64_t observations(std::size_t arm) const { return plays[arm]; }

  void observe(std::size_t arm, double reward);
};

/// Forced plays per arm before the posterior is proper:
/// uniform max(2, 3 - ceil(k)), Gaussian max(2, ceil(3 - k)).
std::uint64_t initial_play_count(Model model, PriorK prior);

/// One posterior draw for an arm. `sigma` is the sampled sigma_tilde in the
/// uniform model; in the Gaussian model sigma is integrated out and `sigma` is
/// the scale estimate the t law was built from (sigma_hat, or sigma_bar under TS-T).
struct ArmDraw {
  double mu;
  double sigma;
};

ArmDraw sample_arm(PolicyState& state, const PolicyConfig& config, std::size_t arm, Rng& rng);

/// Argmax with uniform random tie-breaking; consumes randomness only on ties.
std::size_t select_argmax(const std::vector<double>& values, Rng& rng);

/// One TS / TS-T decision: sample every arm in index order, return the argmax.
/// Throws std::logic_error if some non-overridden arm has fewer than n0
/// observations.
std::size_t ts_select(PolicyState& state, const PolicyConfig& config, Rng& rng,
                      const ArmOverrides& overrides = {});

/// Plays every arm n0 times round-robin (0, 1, ..., K-1, 0, 1, ...), feeding
/// rewards into `state`. Returns the play order.
std::vector<std::size_t> run_initial_phase(PolicyState& state, const PolicyConfig& config,
                                           const BanditInstance& instance, Rng& rng);

}  // namespace banditlab
