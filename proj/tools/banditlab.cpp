// banditlab: command-line front end for the Thompson-sampling regret lab.
//
// Exit codes: 0 success, 1 a check reported failure, 2 usage error,
// 3 runtime or configuration error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "banditlab/bounds.hpp"
#include "banditlab/diagnostics.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/serialization.hpp"

namespace {

using namespace banditlab;

constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;
constexpr int kRuntimeError = 3;

struct RunArgs {
  std::string config_path;
  std::string instance;
  std::string policy;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> stride;
  std::string out;
  std::string format;
};

struct LowerBoundArgs {
  std::string instance;
  std::uint64_t horizon = 10000;
  int per_decade = 20;
  std::string out;
};

struct DiagArgs {
  double k = 0.0;
  std::uint64_t horizon = 100000;
  std::uint64_t runs = 200;
  std::string out;
};

struct KsArgs {
  std::uint64_t samples = 100000;
};

TraceFormat resolve_format(const std::string& format, const std::string& out) {
  if (format == "csv") return TraceFormat::Csv;
  if (format == "json") return TraceFormat::Json;
  return trace_format_for(out);
}

int cmd_run(const RunArgs& args, std::uint64_t seed, bool seed_given, unsigned workers) {
  std::optional<ExperimentConfig> config;
  if (!args.config_path.empty()) {
    config = experiment_from_json(read_json_file(args.config_path));
    if (seed_given) config->master_seed = seed;
  } else {
    if (args.instance.empty() || args.policy.empty()) {
      std::cerr << "run: --instance and --policy are required without --config\n";
      return kUsageError;
    }
  }
  if (!args.instance.empty()) {
    BanditInstance instance = load_instance(args.instance);
    PolicyConfig policy = config ? config->policy : PolicyConfig{};
    policy.model = instance.model();
    if (config) {
      config->instance = std::move(instance);
      config->policy = policy;
    } else {
      config.emplace(std::move(instance), policy);
      config->master_seed = seed;
    }
  }
  if (!args.policy.empty()) {
    config->policy = parse_policy_spec(args.policy, config->instance.model());
  }
  if (args.horizon) config->horizon = *args.horizon;
  if (args.runs) config->runs = *args.runs;
  if (args.stride) config->record_stride = *args.stride;

  const RegretTrace trace = run_experiment(*config, workers);
  if (!args.out.empty()) {
    write_trace(trace, args.out, resolve_format(args.format, args.out), &*config);
  }
  std::printf("instance=%s policy=%s%s T=%llu runs=%llu seed=%llu final_regret=%.6g +- %.3g\n",
              std::string(to_string(config->instance.model())).c_str(),
              to_spec(config->policy).c_str(),
              config->policy.known_suboptimal() ? " (known-suboptimal)" : "",
              static_cast<unsigned long long>(config->horizon),
              static_cast<unsigned long long>(config->runs),
              static_cast<unsigned long long>(config->master_seed), trace.mean_regret.back(),
              trace.stderr_regret.back());
  return 0;
}

int cmd_lower_bound(const LowerBoundArgs& args) {
  const BanditInstance instance = load_instance(args.instance);
  const LowerBoundCurve curve = lb_curve(instance, log_spaced_grid(args.horizon, args.per_decade));
  std::FILE* out = stdout;
  if (!args.out.empty()) {
    out = std::fopen(args.out.c_str(), "w");
    if (!out) throw std::runtime_error("cannot open '" + args.out + "' for writing");
  }
  std::fprintf(out, "t,bound\n");
  for (std::size_t j = 0; j < curve.t_grid.size(); ++j) {
    std::fprintf(out, "%s,%s\n", format_double(curve.t_grid[j]).c_str(),
                 format_double(curve.values[j]).c_str());
  }
  if (out != stdout) std::fclose(out);
  return 0;
}

int cmd_diag(const DiagArgs& args, std::uint64_t seed, unsigned workers) {
  const DiracDiagnosticResult r = run_dirac_diagnostic(args.k, args.horizon, args.runs, seed, workers);
  if (!args.out.empty()) write_trace(r.trace, args.out, trace_format_for(args.out));
  std::printf("dirac diagnostic: k=%s T=%llu runs=%llu seed=%llu\n", format_double(r.k).c_str(),
              static_cast<unsigned long long>(args.horizon),
              static_cast<unsigned long long>(args.runs), static_cast<unsigned long long>(seed));
  std::printf("growth exponent over [T/100, T]: %.4f\n", r.exponent);
  if (r.k > 1.0) std::printf("theoretical exponent (k-1)/k: %.4f\n", (r.k - 1.0) / r.k);
  std::printf("final regret / log T: %.4f\n", r.regret_per_log_t);
  std::printf("verdict: %s\n", r.verdict.c_str());
  return r.verdict == "fail" ? kCheckFailed : 0;
}

int cmd_ks_check(const KsArgs& args, std::uint64_t seed) {
  const SamplerReport report = check_samplers(args.samples, seed);
  std::printf("sampler checks: N=%llu seed=%llu\n", static_cast<unsigned long long>(report.samples),
              static_cast<unsigned long long>(report.seed));
  for (const CheckLine& c : report.checks) {
    std::printf("  %-40s %.6f %s %.6f  %s\n", c.name.c_str(), c.statistic, c.upper ? "<" : ">=",
                c.threshold, c.pass ? "PASS" : "FAIL");
  }
  return report.all_pass() ? 0 : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson sampling regret lab for uniform and Gaussian bandits"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::uint64_t seed = 7;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* seed_opt = app.add_option("--seed", seed, "Master seed")->envname("BANDITLAB_SEED");
  app.add_option("--workers", workers, "Worker threads (does not affect results)")
      ->check(CLI::PositiveNumber);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte-Carlo regret experiment");
  run->add_option("--config", run_args.config_path, "Experiment config JSON")
      ->check(CLI::ExistingFile);
  run->add_option("--instance", run_args.instance,
                  "paper-uniform-6arm, paper-gaussian-6arm or an instance JSON path");
  run->add_option("--policy", run_args.policy, "ts:k=<real>, tst:reference, ...");
  run->add_option("--T", run_args.horizon, "Horizon");
  run->add_option("--runs", run_args.runs, "Independent runs");
  run->add_option("--stride", run_args.stride, "Rounds between recorded points");
  run->add_option("--out", run_args.out, "Trace output path (.csv or .json)");
  run->add_option("--format", run_args.format, "csv or json (default: from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  LowerBoundArgs lb_args;
  auto* lb = app.add_subcommand("lower-bound", "Asymptotic regret lower bound as CSV (t,bound)");
  lb->add_option("--instance", lb_args.instance, "Instance name or JSON path")->required();
  lb->add_option("--T", lb_args.horizon, "Last round of the grid")->check(CLI::PositiveNumber);
  lb->add_option("--per-decade", lb_args.per_decade, "Grid points per decade")
      ->check(CLI::PositiveNumber);
  lb->add_option("--out", lb_args.out, "Output CSV (default stdout)");

  DiagArgs diag_args;
  auto* diag = app.add_subcommand("diag-theorem2", "Dirac-arm regret growth diagnostic");
  diag->add_option("--k", diag_args.k, "Prior exponent")->required();
  diag->add_option("--T", diag_args.horizon, "Horizon");
  diag->add_option("--runs", diag_args.runs, "Independent runs")->check(CLI::PositiveNumber);
  diag->add_option("--out", diag_args.out, "Trace output path");

  KsArgs ks_args;
  auto* ks = app.add_subcommand("ks-check", "Goodness-of-fit checks of the posterior samplers");
  ks->add_option("--samples", ks_args.samples, "Draws per check")->check(CLI::Range(2, 100000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(run_args, seed, seed_opt->count() > 0, workers);
    if (*lb) return cmd_lower_bound(lb_args);
    if (*diag) return cmd_diag(diag_args, seed, workers);
    if (*ks) return cmd_ks_check(ks_args, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
