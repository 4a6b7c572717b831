#include "banditlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "banditlab/random.hpp"
#include "banditlab/reward_models.hpp"
#include "banditlab/serialization.hpp"

namespace banditlab {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

ArmOverrides overrides_for(const ExperimentConfig& config) {
  if (!config.diagnostic) return {};
  ArmOverrides overrides(config.instance.size());
  overrides[1] = make_dirac_arm(config.instance.arm(1).mu);
  return overrides;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.policy.model != config.instance.model()) {
    throw std::invalid_argument("policy model does not match instance model");
  }
  if (config.runs == 0) throw std::invalid_argument("runs must be >= 1");
  if (config.record_stride == 0) throw std::invalid_argument("record_stride must be >= 1");
  const std::uint64_t warmup =
      initial_play_count(config.policy.model, config.policy.prior) * config.instance.size();
  if (config.horizon < warmup) {
    throw std::invalid_argument("horizon " + std::to_string(config.horizon) +
                                " is shorter than the " + std::to_string(warmup) +
                                " forced initial plays");
  }
}

std::vector<std::uint64_t> record_points(std::uint64_t horizon, std::uint64_t stride) {
  if (horizon == 0 || stride == 0) {
    throw std::invalid_argument("record_points: horizon and stride must be >= 1");
  }
  std::vector<std::uint64_t> points;
  for (std::uint64_t t = stride; t <= horizon; t += stride) points.push_back(t);
  // 20 points per decade so log-x plots are dense at the start.
  for (int j = 0;; ++j) {
    const auto t = static_cast<std::uint64_t>(std::llround(std::pow(10.0, j / 20.0)));
    if (t > horizon) break;
    points.push_back(t);
  }
  points.push_back(horizon);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t run_index,
                     bool keep_actions) {
  validate(config);
  const BanditInstance& instance = config.instance;
  const std::vector<double> gaps = gap_vector(instance).gaps;
  const std::vector<std::uint64_t> points = record_points(config.horizon, config.record_stride);
  const ArmOverrides overrides = overrides_for(config);

  Rng rng = make_run_rng({config.master_seed, run_index});
  PolicyState state(instance.model(), instance.size());

  RunResult result;
  result.regret.reserve(points.size());
  if (keep_actions) result.actions.reserve(config.horizon);

  double cumulative = 0.0;
  std::size_t next_point = 0;
  auto account = [&](std::uint64_t t, std::size_t arm) {
    cumulative += gaps[arm];
    if (keep_actions) result.actions.push_back(static_cast<std::uint32_t>(arm));
    if (next_point < points.size() && points[next_point] == t) {
      result.regret.push_back(cumulative);
      ++next_point;
    }
  };

  std::uint64_t t = 1;
  for (std::size_t arm : run_initial_phase(state, config.policy, instance, rng)) {
    account(t++, arm);
  }
  for (; t <= config.horizon; ++t) {
    const std::size_t arm = ts_select(state, config.policy, rng, overrides);
    state.observe(arm, sample_reward(instance, arm, rng));
    account(t, arm);
  }

  result.total_regret = cumulative;
  result.counts = state.plays;
  result.truncation_binding = state.truncation_binding;
  result.degenerate_scale_events = state.degenerate_scale_events;
  return result;
}

RegretTrace aggregate(const std::vector<std::uint64_t>& t_points,
                      const std::vector<std::vector<double>>& per_run) {
  RegretTrace trace;
  trace.t_points = t_points;
  trace.run_count = per_run.size();
  const std::size_t p = t_points.size();
  trace.mean_regret.assign(p, 0.0);
  trace.stderr_regret.assign(p, 0.0);
  if (per_run.empty()) return trace;
  for (const auto& row : per_run) {
    if (row.size() != p) throw std::invalid_argument("aggregate: ragged per-run rows");
  }
  const double r = static_cast<double>(per_run.size());
  for (std::size_t j = 0; j < p; ++j) {
    CompensatedSum sum;
    for (const auto& row : per_run) sum.add(row[j]);
    const double mean = sum.value() / r;
    trace.mean_regret[j] = mean;
    if (per_run.size() > 1) {
      CompensatedSum sq;
      for (const auto& row : per_run) {
        const double d = row[j] - mean;
        sq.add(d * d);
      }
      trace.stderr_regret[j] = std::sqrt(sq.value() / (r - 1.0) / r);
    }
  }
  return trace;
}

RegretTrace run_experiment(const ExperimentConfig& config, unsigned workers) {
  validate(config);
  const std::vector<std::uint64_t> points = record_points(config.horizon, config.record_stride);
  std::vector<std::vector<double>> per_run(config.runs);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t i = next++; i < config.runs; i = next++) {
        per_run[i] = run_single(config, i).regret;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = config.runs;
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.runs)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(points, per_run);
}

double fit_growth_exponent(const RegretTrace& trace, double t_lo, double t_hi) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("fit_growth_exponent: need t_lo < t_hi");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = 0; j < trace.t_points.size(); ++j) {
    const double t = static_cast<double>(trace.t_points[j]);
    if (t < t_lo || t > t_hi) continue;
    const double r = trace.mean_regret[j];
    if (!(r > 0.0)) {
      throw std::domain_error("fit_growth_exponent: nonpositive regret at t=" +
                              std::to_string(trace.t_points[j]));
    }
    xs.push_back(std::log(t));
    ys.push_back(std::log(r));
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("fit_growth_exponent: fewer than two recorded points in window");
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

TraceFormat trace_format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? TraceFormat::Json : TraceFormat::Csv;
}

void write_trace(const RegretTrace& trace, const std::filesystem::path& path, TraceFormat format,
                 const ExperimentConfig* config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  if (format == TraceFormat::Csv) {
    out << "t,mean_regret,stderr\n";
    for (std::size_t j = 0; j < trace.t_points.size(); ++j) {
      out << trace.t_points[j] << ',' << format_double(trace.mean_regret[j]) << ','
          << format_double(trace.stderr_regret[j]) << '\n';
    }
  } else {
    nlohmann::json j;
    j["config"] = config ? to_json(*config) : nlohmann::json(nullptr);
    j["t"] = trace.t_points;
    j["mean"] = trace.mean_regret;
    j["stderr"] = trace.stderr_regret;
    j["runs"] = trace.run_count;
    out << j.dump(2) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

RegretTrace read_trace(const std::filesystem::path& path, TraceFormat format) {
  RegretTrace trace;
  if (format == TraceFormat::Json) {
    const nlohmann::json j = read_json_file(path);
    try {
      trace.t_points = j.at("t").get<std::vector<std::uint64_t>>();
      trace.mean_regret = j.at("mean").get<std::vector<double>>();
      trace.stderr_regret = j.at("stderr").get<std::vector<double>>();
      trace.run_count = j.value("runs", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("'" + path.string() + "': " + e.what());
    }
    return trace;
  }

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,mean_regret,stderr") {
    throw std::invalid_argument("'" + path.string() + "': missing CSV header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string t;
    std::string mean;
    std::string se;
    if (!std::getline(row, t, ',') || !std::getline(row, mean, ',') || !std::getline(row, se)) {
      throw std::invalid_argument("'" + path.string() + "': malformed row '" + line + "'");
    }
    trace.t_points.push_back(std::stoull(t));
    trace.mean_regret.push_back(std::stod(mean));
    trace.stderr_regret.push_back(std::stod(se));
  }
  return trace;
}

}  // namespace banditlab
