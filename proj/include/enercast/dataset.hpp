#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "enercast/matrix.hpp"
#include "enercast/telemetry.hpp"

namespace enercast {

struct WindowSpec {
  std::size_t lags = 10;
  std::size_t horizon = 5;
  std::vector<Variable> variables = {Variable::temperature, Variable::humidity, Variable::light,
                                     Variable::power};
  double train_fraction = 0.8;
  std::int64_t max_gap_minutes = 1;  // windows spanning larger gaps are skipped

  void validate() const;
};

// Lagged feature matrix with a horizon target. Feature row i ends at frame
// index i+L-1 and its target is the power value h steps later; every feature
// strictly precedes its target.
struct WindowedDataset {
  Matrix features;                 // rows x (L * |variables|)
  std::vector<double> targets;     // power at horizon
  std::vector<std::int64_t> start_minutes;
  std::vector<std::int64_t> target_minutes;
  std::vector<std::string> column_labels;  // e.g. temperature_lag9 ... power_lag0
  std::size_t split_index = 0;             // floor(train_fraction * rows)
  std::size_t skipped_gap_windows = 0;

  std::size_t rows() const { return targets.size(); }
};

WindowedDataset build_windows(const AlignedFrame& frame, const WindowSpec& spec);

struct SplitView {
  MatrixView features;
  std::span<const double> targets;
  std::size_t rows() const { return targets.size(); }
};

// Chronological split: train = [0, split_index), test = the rest. No
// shuffling; both sides must be nonempty.
std::pair<SplitView, SplitView> split_chronological(const WindowedDataset& ds);

// Spec without `variable`; the target variable cannot be dropped.
WindowSpec drop_variable(const WindowSpec& spec, Variable variable);

// Per-column z-score parameters. A zero-variance column passes through.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> stddev;  // 0 marks a passthrough column

  void apply(Matrix& m) const;
  void apply_row(std::span<double> row) const;
};

Scaler fit_scaler(const Matrix& train);

struct StandardizedSplit {
  Matrix train;
  Matrix test;
  Scaler scaler;
};

// z-scores both sides with train statistics only; targets are not scaled.
StandardizedSplit standardize(const MatrixView& train, const MatrixView& test);

// Features plus target column, labels in the header.
void write_dataset_csv(std::ostream& out, const WindowedDataset& ds);

}  // namespace enercast
