#include "banditlab/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "banditlab/posteriors.hpp"

namespace banditlab {

using nlohmann::json;

json to_json(const BanditInstance& instance) {
  json arms = json::array();
  for (const Arm& a : instance.arms()) arms.push_back({{"mu", a.mu}, {"sigma", a.sigma}});
  return {{"model", std::string(to_string(instance.model()))}, {"arms", std::move(arms)}};
}

BanditInstance instance_from_json(const json& j) {
  try {
    std::vector<Arm> arms;
    for (const json& a : j.at("arms")) {
      arms.push_back({a.at("mu").get<double>(), a.at("sigma").get<double>()});
    }
    return BanditInstance(parse_model(j.at("model").get<std::string>()), std::move(arms));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
}

json to_json(const PolicyConfig& policy) {
  return {{"kind", std::string(to_string(policy.kind))},
          {"k", policy.prior.k},
          {"model", std::string(to_string(policy.model))},
          {"known_suboptimal", policy.known_suboptimal()}};
}

PolicyConfig policy_from_json(const json& j, Model model) {
  try {
    if (j.is_string()) return parse_policy_spec(j.get<std::string>(), model);
    const std::string kind = j.at("kind").get<std::string>();
    PolicyConfig p = parse_policy_spec(kind + ":k=0", model);
    p.prior = PriorK{j.at("k").get<double>()};
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed policy JSON: ") + e.what());
  }
}

json to_json(const ExperimentConfig& config) {
  json j = {{"instance", to_json(config.instance)},
            {"policy", to_json(config.policy)},
            {"horizon", config.horizon},
            {"runs", config.runs},
            {"master_seed", config.master_seed},
            {"record_stride", config.record_stride}};
  j["diagnostic"] = config.diagnostic ? json("theorem2") : json(nullptr);
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  try {
    BanditInstance instance = j.at("instance").is_string()
                                  ? load_instance(j.at("instance").get<std::string>())
                                  : instance_from_json(j.at("instance"));
    PolicyConfig policy = policy_from_json(j.at("policy"), instance.model());
    ExperimentConfig config(std::move(instance), policy);
    config.horizon = j.value("horizon", config.horizon);
    config.runs = j.value("runs", config.runs);
    config.master_seed = j.value("master_seed", config.master_seed);
    config.record_stride = j.value("record_stride", config.record_stride);
    if (j.contains("diagnostic") && !j.at("diagnostic").is_null()) {
      if (j.at("diagnostic").get<std::string>() != "theorem2") {
        throw std::invalid_argument("unknown diagnostic " + j.at("diagnostic").dump());
      }
      config.diagnostic = Diagnostic::PinnedArm;
    }
    return config;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment JSON: ") + e.what());
  }
}

std::optional<BanditInstance> builtin_instance(std::string_view name) {
  if (name == "paper-uniform-6arm") {
    return BanditInstance(Model::Uniform, {{5.5, 4.5},
                                           {5.0, 5.0},
                                           {4.5, 4.5},
                                           {4.0, 4.0},
                                           {4.75, 3.75},
                                           {3.0, 2.0}});
  }
  if (name == "paper-gaussian-6arm") {
    return BanditInstance(Model::Gaussian, {{10.0, 2.0 * std::sqrt(2.0)},
                                            {9.0, 1.0},
                                            {8.0, 1.0},
                                            {7.0, std::sqrt(0.5)},
                                            {-1.0, 1.0},
                                            {0.0, 2.0}});
  }
  return std::nullopt;
}

BanditInstance dirac_diagnostic_instance() {
  const auto [mu1, sigma1] = uniform_ls_from_ab(0.0, 1.0);
  const auto [mu2, sigma2] = uniform_ls_from_ab(0.0, 0.1);
  return BanditInstance(Model::Uniform, {{mu1, sigma1}, {mu2, sigma2}});
}

BanditInstance load_instance(std::string_view name_or_path) {
  if (auto builtin = builtin_instance(name_or_path)) return *builtin;
  return instance_from_json(read_json_file(std::filesystem::path(name_or_path)));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path.string() + "': " + e.what());
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace banditlab
