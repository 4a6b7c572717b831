#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace banditlab {

/// Reward family shared by every arm of an instance.
enum class Model { Uniform, Gaussian };

std::string_view to_string(Model model);
Model parse_model(std::string_view name);

/// Location (mean) and scale of one arm. For the uniform model the support is
/// [mu - sigma/2, mu + sigma/2]; for the Gaussian model sigma is the standard
/// deviation.
struct Arm {
  double mu = 0.0;
  double sigma = 1.0;

  friend bool operator==(const Arm&, const Arm&) = default;
};

/// A stochastic bandit environment. Validated on construction: at least two
/// arms, every scale strictly positive and every parameter finite.
class BanditInstance {
 public:
  BanditInstance(Model model, std::vector<Arm> arms);

  Model model() const { return model_; }
  const std::vector<Arm>& arms() const { return arms_; }
  const Arm& arm(std::size_t i) const { return arms_.at(i); }
  std::size_t size() const { return arms_.size(); }

  friend bool operator==(const BanditInstance&, const BanditInstance&) = default;

 private:
  Model model_;
  std::vector<Arm> arms_;
};

struct GapVector {
  std::vector<double> gaps;
  std::size_t best_index = 0;

  double max_gap() const;
};

/// Sub-optimality gaps against the best mean. Exact ties resolve to the lowest
/// index.
GapVector gap_vector(const BanditInstance& instance);

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t run_index = 0;
};

/// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-run stream seed: splitmix64(master ^ splitmix64(run_index)). Both maps
/// are bijections on 64-bit words, so distinct run indices under one master
/// seed always give distinct seeds.
constexpr std::uint64_t derive_run_seed(SeedSpec spec) {
  return splitmix64(spec.master_seed ^ splitmix64(spec.run_index));
}

/// The engine is fully specified by the standard, so streams are identical
/// across platforms. All variate transforms live in random.hpp.
using Rng = std::mt19937_64;

inline Rng make_run_rng(SeedSpec spec) { return Rng{derive_run_seed(spec)}; }

}  // namespace banditlab
