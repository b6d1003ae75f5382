#include "enercast/harness.hpp"

#include <cmath>
#include <string>

#include "enercast/error.hpp"
#include "enercast/rng.hpp"

namespace enercast {

namespace {

// Exactly zero for bitwise-identical samples, population form otherwise.
double population_std(const std::vector<double>& values) {
  bool all_equal = true;
  for (double v : values) {
    if (v != values[0]) {
      all_equal = false;
      break;
    }
  }
  if (all_equal) return 0.0;
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / n);
}

MetricSet aggregate(const std::vector<std::vector<MetricSet>>& raw, std::size_t model,
                    double (*reducer)(const std::vector<double>&), double MetricSet::* field) {
  std::vector<double> values(raw.size());
  MetricSet out;
  (void)field;
  return out;
}

}  // namespace

const char* round_name(Round r) { return r == Round::full ? "full" : "reduced"; }

ModelSpec make_model_spec(Algorithm algorithm, std::uint64_t seed) {
  ModelSpec spec;
  spec.algorithm = algorithm;
  spec.hyper = default_hyperparameters(algorithm);
  spec.rng_seed = seed;
  return spec;
}

std::vector<ModelSpec> default_model_specs(std::uint64_t seed) {
  std::vector<ModelSpec> specs;
  for (Algorithm a : kAllAlgorithms) specs.push_back(make_model_spec(a, seed));
  return specs;
}

RoundReport run_round(const AlignedFrame& frame, const RoundConfig& cfg, Exec exec) {
  if (cfg.repetitions < 1) fail(ErrorKind::Usage, "repetitions must be >= 1");
  if (cfg.models.empty()) fail(ErrorKind::Usage, "no models configured");

  const WindowedDataset dataset = build_windows(frame, cfg.window);
  const auto [train_view, test_view] = split_chronological(dataset);
  const Matrix train_X = train_view.features.materialize();
  const Matrix test_X = test_view.features.materialize();
  const std::span<const double> train_y = train_view.targets;
  const std::span<const double> test_y = test_view.targets;

  RoundReport report;
  report.round = cfg.round;
  report.repetitions = cfg.repetitions;
  for (const ModelSpec& spec : cfg.models) report.algorithms.push_back(spec.algorithm);
  report.raw.assign(cfg.repetitions, std::vector<MetricSet>(cfg.models.size()));

  std::vector<std::vector<double>> fit_seconds(cfg.repetitions,
                                               std::vector<double>(cfg.models.size(), 0.0));

  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_stream(cfg.seed, rep);
    parallel_for(cfg.models.size(), exec, [&, rep](std::size_t m) {
      ModelSpec spec = cfg.models[m];
      spec.rng_seed = derive_stream(rep_seed, m);
      // Nested kernels run serial; parallelism is spent across models here.
      const TrainedModel model = fit_model(spec, train_X, train_y, Exec::Serial);
      const std::vector<double> predictions = predict(model, test_X, Exec::Serial);
      report.raw[rep][m] = compute_metrics(test_y, predictions);
      fit_seconds[rep][m] = model.fit_seconds;
    });
  }

  const double reps = static_cast<double>(cfg.repetitions);
  report.mean_metrics.resize(cfg.models.size());
  report.std_metrics.resize(cfg.models.size());
  report.mean_fit_seconds.assign(cfg.models.size(), 0.0);
  for (std::size_t m = 0; m < cfg.models.size(); ++m) {
    std::vector<double> mse(cfg.repetitions), rmse(cfg.repetitions), mae(cfg.repetitions),
        r2(cfg.repetitions);
    double seconds = 0.0;
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
      mse[rep] = report.raw[rep][m].mse;
      rmse[rep] = report.raw[rep][m].rmse;
      mae[rep] = report.raw[rep][m].mae;
      r2[rep] = report.raw[rep][m].r2;
      seconds += fit_seconds[rep][m];
    }
    auto mean_of = [&](const std::vector<double>& values) {
      double sum = 0.0;
      for (double v : values) sum += v;
      return sum / reps;
    };
    report.mean_metrics[m] = {mean_of(mse), mean_of(rmse), mean_of(mae), mean_of(r2)};
    report.std_metrics[m] = {population_std(mse), population_std(rmse), population_std(mae),
                             population_std(r2)};
    report.mean_fit_seconds[m] = seconds / reps;
  }
  return report;
}

RoundDiff compare_rounds(const RoundReport& full, const RoundReport& reduced) {
  if (full.algorithms != reduced.algorithms) {
    fail(ErrorKind::AlgorithmSetMismatch, "round reports cover different algorithm sets");
  }
  RoundDiff diff;
  diff.algorithms = full.algorithms;
  for (std::size_t m = 0; m < full.algorithms.size(); ++m) {
    MetricSet mean_diff;
    mean_diff.r2 = reduced.mean_metrics[m].r2 - full.mean_metrics[m].r2;
    mean_diff.mse = full.mean_metrics[m].mse - reduced.mean_metrics[m].mse;
    mean_diff.rmse = full.mean_metrics[m].rmse - reduced.mean_metrics[m].rmse;
    mean_diff.mae = full.mean_metrics[m].mae - reduced.mean_metrics[m].mae;
    MetricSet std_diff;
    std_diff.r2 = reduced.std_metrics[m].r2 - full.std_metrics[m].r2;
    std_diff.mse = full.std_metrics[m].mse - reduced.std_metrics[m].mse;
    std_diff.rmse = full.std_metrics[m].rmse - reduced.std_metrics[m].rmse;
    std_diff.mae = full.std_metrics[m].mae - reduced.std_metrics[m].mae;
    diff.mean_diff.push_back(mean_diff);
    diff.std_diff.push_back(std_diff);
  }
  return diff;
}

}  // namespace enercast
