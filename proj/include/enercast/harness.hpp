#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enercast/dataset.hpp"
#include "enercast/metrics.hpp"
#include "enercast/model.hpp"
#include "enercast/telemetry.hpp"

namespace enercast {

enum class Round { full, reduced };

const char* round_name(Round r);

struct RoundConfig {
  Round round = Round::full;
  WindowSpec window;
  std::vector<ModelSpec> models;
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
};

// Per-round results: mean and population standard deviation of each metric
// over the repetitions, per algorithm, plus the raw per-repetition values.
struct RoundReport {
  Round round = Round::full;
  std::vector<Algorithm> algorithms;
  std::size_t repetitions = 0;
  std::vector<MetricSet> mean_metrics;
  std::vector<MetricSet> std_metrics;
  std::vector<double> mean_fit_seconds;
  std::vector<std::vector<MetricSet>> raw;  // [repetition][model]
};

// Every model in a repetition sees the identical chronological train/test
// split; repetition r seeds its models from derive(seed, r). Model fits
// within a repetition fan out under Exec::Parallel.
RoundReport run_round(const AlignedFrame& frame, const RoundConfig& cfg,
                      Exec exec = Exec::Parallel);

// Differences oriented so positive means the reduced round did better:
// R^2 diff = reduced - full, error-metric diffs = full - reduced; the same
// per-metric formulas apply to the standard deviations.
struct RoundDiff {
  std::vector<Algorithm> algorithms;
  std::vector<MetricSet> mean_diff;
  std::vector<MetricSet> std_diff;
};

RoundDiff compare_rounds(const RoundReport& full, const RoundReport& reduced);

ModelSpec make_model_spec(Algorithm algorithm, std::uint64_t seed);
std::vector<ModelSpec> default_model_specs(std::uint64_t seed);

}  // namespace enercast
