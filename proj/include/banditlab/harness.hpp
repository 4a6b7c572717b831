#pragma once

// Seeded Monte-Carlo regret experiments.
//
// Each run draws every random number from its own stream, seeded by
// derive_run_seed(master_seed, run_index), and runs are reduced in run-index
// order. The resulting trace is therefore bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/policies.hpp"

namespace banditlab {

/// Built-in diagnostic variants of an experiment.
enum class Diagnostic {
  /// Arm index 1 is a Dirac arm pinned to its true mean.
  PinnedArm,
};

struct ExperimentConfig {
  ExperimentConfig(BanditInstance inst, PolicyConfig pol)
      : instance(std::move(inst)), policy(pol) {}

  BanditInstance instance;
  PolicyConfig policy;
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 1;
  std::uint64_t master_seed = 1;
  std::uint64_t record_stride = 10;
  std::optional<Diagnostic> diagnostic;
};

/// Throws std::invalid_argument on T < K * n0, runs == 0 or stride == 0, or a
/// policy model that does not match the instance.
void validate(const ExperimentConfig& config);

/// Rounds at which cumulative regret is recorded: every multiple of `stride`,
/// plus log-spaced early rounds, plus the horizon itself.
std::vector<std::uint64_t> record_points(std::uint64_t horizon, std::uint64_t stride);

struct RunResult {
  /// Cumulative pseudo-regret after each recorded round.
  std::vector<double> regret;
  /// sum over rounds t of gap[j(t)], accumulated round by round.
  double total_regret = 0.0;
  /// N_i(T + 1).
  std::vector<std::uint64_t> counts;
  /// j(1), ..., j(T); filled only when requested.
  std::vector<std::uint32_t> actions;
  bool truncation_binding = false;
  std::uint64_t degenerate_scale_events = 0;
};

/// One simulated run: the forced initial plays, then TS / TS-T until the horizon.
RunResult run_single(const ExperimentConfig& config, std::uint64_t run_index,
                     bool keep_actions = false);

struct RegretTrace {
  std::vector<std::uint64_t> t_points;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;
  std::uint64_t run_count = 0;

  friend bool operator==(const RegretTrace&, const RegretTrace&) = default;
};

/// Mean and standard error (unbiased variance) across `config.runs` runs.
/// `workers` only changes wall-clock time.
RegretTrace run_experiment(const ExperimentConfig& config, unsigned workers = 1);

/// Reduces per-run regret rows, in order, into a trace.
RegretTrace aggregate(const std::vector<std::uint64_t>& t_points,
                      const std::vector<std::vector<double>>& per_run);

/// Least-squares slope of log(mean_regret) against log(t) over recorded points
/// with t_lo <= t <= t_hi.
double fit_growth_exponent(const RegretTrace& trace, double t_lo, double t_hi);

enum class TraceFormat { Csv, Json };

TraceFormat trace_format_for(const std::filesystem::path& path);

/// CSV: header "t,mean_regret,stderr", one row per point, doubles printed
/// round-trip exact. JSON: {"config": ..., "t": [...], "mean": [...],
/// "stderr": [...], "runs": R}; the config echo is omitted when null.
void write_trace(const RegretTrace& trace, const std::filesystem::path& path, TraceFormat format,
                 const ExperimentConfig* config = nullptr);

RegretTrace read_trace(const std::filesystem::path& path, TraceFormat format);

}  // namespace banditlab
