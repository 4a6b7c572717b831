#include "banditlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banditlab {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Uniform:
      return "uniform";
    case Model::Gaussian:
      return "gaussian";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "uniform") return Model::Uniform;
  if (name == "gaussian") return Model::Gaussian;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected uniform or gaussian)");
}

BanditInstance::BanditInstance(Model model, std::vector<Arm> arms)
    : model_(model), arms_(std::move(arms)) {
  if (arms_.size() < 2) {
    throw std::invalid_argument("a bandit instance needs at least 2 arms");
  }
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    const Arm& a = arms_[i];
    if (!std::isfinite(a.mu) || !std::isfinite(a.sigma) || !(a.sigma > 0.0)) {
      throw std::invalid_argument("arm " + std::to_string(i) +
                                  ": mu must be finite and sigma finite and > 0");
    }
  }
}

double GapVector::max_gap() const {
  return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
}

GapVector gap_vector(const BanditInstance& instance) {
  const auto& arms = instance.arms();
  GapVector out;
  for (std::size_t i = 1; i < arms.size(); ++i) {
    if (arms[i].mu > arms[out.best_index].mu) out.best_index = i;
  }
  const double best = arms[out.best_index].mu;
  out.gaps.reserve(arms.size());
  for (const Arm& a : arms) out.gaps.push_back(best - a.mu);
  return out;
}

}  // namespace banditlab
