#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "enercast/parallel.hpp"
#include "enercast/stats.hpp"
#include "enercast/telemetry.hpp"

namespace enercast {

struct TestConfig {
  std::size_t n_samples = 30;
  std::size_t sample_size = 50;
  double alpha = 0.05;
  double drop_threshold = 1.0 / 3.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct TrialResult {
  double r = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  bool reject_h0 = false;
};

enum class Verdict { keep, drop };

const char* verdict_name(Verdict v);

struct PairSummary {
  Variable env = Variable::temperature;  // tested against power
  std::vector<TrialResult> trials;
  double min_p = 0.0;
  double max_p = 0.0;
  double mean_p = 0.0;
  double median_p = 0.0;
  double rejection_rate = 0.0;
  Verdict verdict = Verdict::keep;
};

struct CorrelationReport {
  TestConfig config;
  std::array<PairSummary, 3> pairs;  // temperature, humidity, light vs power
  std::size_t zero_variance_redraws = 0;

  std::vector<Variable> dropped_variables() const;
};

// Uniform row sample without replacement, deterministic in
// (cfg.rng_seed, trial_index). Raises InsufficientRows when the frame is
// smaller than cfg.sample_size.
std::vector<std::size_t> sample_rows(const AlignedFrame& frame, const TestConfig& cfg,
                                     std::size_t trial_index);

// Runs cfg.n_samples correlation t-test trials per environmental variable
// against power, on a shared row sample per trial. A trial whose sample
// leaves any involved series constant is redrawn from the same stream so the
// trial count stays fixed. Trials are independent; Exec::Parallel fans them
// out over OpenMP with identical results.
CorrelationReport run_reduction(const AlignedFrame& frame, const TestConfig& cfg,
                                Exec exec = Exec::Parallel);

// Brute-force sorted-middle median; mean of the two central order statistics
// for even counts.
double median(std::vector<double> values);

}  // namespace enercast
