#pragma once

// JSON forms of the public types, plus the named built-in instances.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "banditlab/core.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/policies.hpp"

namespace banditlab {

/// {"model": "uniform"|"gaussian", "arms": [{"mu": f, "sigma": f}, ...]}
nlohmann::json to_json(const BanditInstance& instance);
BanditInstance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolicyConfig& policy);
PolicyConfig policy_from_json(const nlohmann::json& j, Model model);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// "paper-uniform-6arm" or "paper-gaussian-6arm"; nullopt otherwise.
std::optional<BanditInstance> builtin_instance(std::string_view name);

/// Two uniform arms with supports [0, 1] and [0, 0.1], used by the Dirac-arm
/// diagnostic.
BanditInstance dirac_diagnostic_instance();

/// A built-in name, or a path to an instance JSON file.
BanditInstance load_instance(std::string_view name_or_path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace banditlab
