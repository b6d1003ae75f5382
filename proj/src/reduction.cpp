#include "enercast/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "enercast/error.hpp"
#include "enercast/rng.hpp"

namespace enercast {

namespace {

constexpr std::array<Variable, 3> kEnvVariables = {Variable::temperature, Variable::humidity,
                                                   Variable::light};
constexpr std::size_t kMaxRedraws = 1000;

bool constant_on_sample(std::span<const double> column, const std::vector<std::size_t>& rows) {
  const double first = column[rows[0]];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (column[rows[i]] != first) return false;
  }
  return true;
}

std::vector<double> gather(std::span<const double> column, const std::vector<std::size_t>& rows) {
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) values[i] = column[rows[i]];
  return values;
}

}  // namespace

void TestConfig::validate() const {
  if (n_samples < 1) fail(ErrorKind::Usage, "n_samples must be >= 1");
  if (sample_size < 3) fail(ErrorKind::Usage, "sample_size must be >= 3 (t-test needs df >= 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Usage, "alpha must be in (0, 1)");
  if (!(drop_threshold >= 0.0 && drop_threshold <= 1.0)) {
    fail(ErrorKind::Usage, "drop_threshold must be in [0, 1]");
  }
}

const char* verdict_name(Verdict v) { return v == Verdict::keep ? "keep" : "drop"; }

std::vector<Variable> CorrelationReport::dropped_variables() const {
  std::vector<Variable> dropped;
  for (const auto& pair : pairs) {
    if (pair.verdict == Verdict::drop) dropped.push_back(pair.env);
  }
  return dropped;
}

std::vector<std::size_t> sample_rows(const AlignedFrame& frame, const TestConfig& cfg,
                                     std::size_t trial_index) {
  if (frame.size() < cfg.sample_size) {
    fail(ErrorKind::InsufficientRows, "frame has " + std::to_string(frame.size()) +
                                          " rows, sample needs " + std::to_string(cfg.sample_size));
  }
  Rng rng(derive_stream(cfg.rng_seed, trial_index));
  return rng.sample_without_replacement(frame.size(), cfg.sample_size);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CorrelationReport run_reduction(const AlignedFrame& frame, const TestConfig& cfg, Exec exec) {
  cfg.validate();
  if (frame.size() < cfg.sample_size) {
    fail(ErrorKind::InsufficientRows, "frame has " + std::to_string(frame.size()) +
                                          " rows, sample needs " + std::to_string(cfg.sample_size));
  }

  CorrelationReport report;
  report.config = cfg;
  for (std::size_t p = 0; p < kEnvVariables.size(); ++p) {
    report.pairs[p].env = kEnvVariables[p];
    report.pairs[p].trials.resize(cfg.n_samples);
  }

  std::vector<std::size_t> redraws_per_trial(cfg.n_samples, 0);

  parallel_for(cfg.n_samples, exec, [&](std::size_t trial) {
    // All three pairs share one row sample per trial. The sample is redrawn
    // from the trial's own stream while any involved series is constant.
    Rng rng(derive_stream(cfg.rng_seed, trial));
    std::vector<std::size_t> rows;
    std::size_t redraws = 0;
    for (;;) {
      rows = rng.sample_without_replacement(frame.size(), cfg.sample_size);
      bool degenerate = false;
      for (Variable v : kAllVariables) {
        if (constant_on_sample(frame.column(v), rows)) degenerate = true;
      }
      if (!degenerate) break;
      if (++redraws > kMaxRedraws) {
        fail(ErrorKind::ZeroVariance,
             "trial " + std::to_string(trial) + ": a series is constant on every sampled subset");
      }
    }
    redraws_per_trial[trial] = redraws;

    const std::vector<double> power = gather(frame.column(Variable::power), rows);
    for (std::size_t p = 0; p < kEnvVariables.size(); ++p) {
      const std::vector<double> env = gather(frame.column(kEnvVariables[p]), rows);
      const double r = pearson_r(env, power);
      const TTestResult test = correlation_t_test(r, cfg.sample_size, cfg.alpha);
      report.pairs[p].trials[trial] = {r, test.t_stat, test.p_value, test.reject_h0};
    }
  });

  for (std::size_t redraws : redraws_per_trial) report.zero_variance_redraws += redraws;

  for (auto& pair : report.pairs) {
    std::vector<double> p_values(cfg.n_samples);
    std::size_t rejections = 0;
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
      p_values[i] = pair.trials[i].p_value;
      if (pair.trials[i].reject_h0) ++rejections;
    }
    pair.min_p = *std::min_element(p_values.begin(), p_values.end());
    pair.max_p = *std::max_element(p_values.begin(), p_values.end());
    double sum = 0.0;
    for (double p : p_values) sum += p;
    pair.mean_p = sum / static_cast<double>(cfg.n_samples);
    pair.median_p = median(p_values);
    pair.rejection_rate = static_cast<double>(rejections) / static_cast<double>(cfg.n_samples);
    pair.verdict = pair.rejection_rate < cfg.drop_threshold ? Verdict::drop : Verdict::keep;
  }
  return report;
}

}  // namespace enercast
