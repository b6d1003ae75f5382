#include "enercast/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "enercast/error.hpp"

namespace enercast {

void WindowSpec::validate() const {
  if (lags < 1) fail(ErrorKind::Usage, "lags must be >= 1");
  if (horizon < 1) fail(ErrorKind::Usage, "horizon must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::Usage, "train_fraction must be in (0, 1)");
  }
  if (variables.empty()) fail(ErrorKind::Usage, "variable list is empty");
  if (std::find(variables.begin(), variables.end(), Variable::power) == variables.end()) {
    fail(ErrorKind::Usage, "variable list must contain power (the target)");
  }
}

WindowedDataset build_windows(const AlignedFrame& frame, const WindowSpec& spec) {
  spec.validate();
  const std::size_t n = frame.size();
  const std::size_t span = spec.lags + spec.horizon;
  if (n < span) {
    fail(ErrorKind::FrameTooShort, "frame has " + std::to_string(n) + " rows, windows need " +
                                       std::to_string(span));
  }

  WindowedDataset ds;
  for (Variable v : spec.variables) {
    for (std::size_t lag = spec.lags; lag-- > 0;) {
      ds.column_labels.push_back(std::string(variable_name(v)) + "_lag" + std::to_string(lag));
    }
  }

  const std::int64_t max_gap_ms = spec.max_gap_minutes * kMillisPerMinute;
  const std::size_t candidate_count = n - span + 1;

  // First pass: which window starts span only admissible minute gaps.
  std::vector<std::size_t> starts;
  starts.reserve(candidate_count);
  for (std::size_t start = 0; start < candidate_count; ++start) {
    bool contiguous = true;
    for (std::size_t j = start; j + 1 < start + span; ++j) {
      if (frame.minutes[j + 1] - frame.minutes[j] > max_gap_ms) {
        contiguous = false;
        break;
      }
    }
    if (contiguous) {
      starts.push_back(start);
    } else {
      ++ds.skipped_gap_windows;
    }
  }

  const std::size_t width = spec.lags * spec.variables.size();
  ds.features = Matrix(starts.size(), width);
  ds.targets.resize(starts.size());
  ds.start_minutes.resize(starts.size());
  ds.target_minutes.resize(starts.size());

  for (std::size_t row = 0; row < starts.size(); ++row) {
    const std::size_t start = starts[row];
    std::size_t col = 0;
    for (Variable v : spec.variables) {
      const auto column = frame.column(v);
      for (std::size_t offset = 0; offset < spec.lags; ++offset) {
        ds.features(row, col++) = column[start + offset];
      }
    }
    const std::size_t target_index = start + spec.lags - 1 + spec.horizon;
    ds.targets[row] = frame.column(Variable::power)[target_index];
    ds.start_minutes[row] = frame.minutes[start];
    ds.target_minutes[row] = frame.minutes[target_index];
  }

  ds.split_index = static_cast<std::size_t>(std::floor(spec.train_fraction *
                                                       static_cast<double>(ds.rows())));
  return ds;
}

std::pair<SplitView, SplitView> split_chronological(const WindowedDataset& ds) {
  if (ds.rows() == 0) fail(ErrorKind::DegenerateSplit, "dataset is empty");
  const std::size_t split = ds.split_index;
  if (split == 0 || split >= ds.rows()) {
    fail(ErrorKind::DegenerateSplit, "split " + std::to_string(split) + " of " +
                                         std::to_string(ds.rows()) + " rows leaves a side empty");
  }
  SplitView train{{&ds.features, 0, split}, std::span<const double>(ds.targets).subspan(0, split)};
  SplitView test{{&ds.features, split, ds.rows()},
                 std::span<const double>(ds.targets).subspan(split)};
  return {train, test};
}

WindowSpec drop_variable(const WindowSpec& spec, Variable variable) {
  if (variable == Variable::power) {
    fail(ErrorKind::CannotDropTarget, "power is the target and cannot be dropped");
  }
  const auto it = std::find(spec.variables.begin(), spec.variables.end(), variable);
  if (it == spec.variables.end()) {
    fail(ErrorKind::UnknownVariable,
         std::string(variable_name(variable)) + " is not in the variable list");
  }
  WindowSpec reduced = spec;
  reduced.variables.erase(reduced.variables.begin() + (it - spec.variables.begin()));
  return reduced;
}

void Scaler::apply(Matrix& m) const {
  for (std::size_t r = 0; r < m.rows(); ++r) apply_row(m.row(r));
}

void Scaler::apply_row(std::span<double> row) const {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (stddev[c] > 0.0) row[c] = (row[c] - mean[c]) / stddev[c];
  }
}

Scaler fit_scaler(const Matrix& train) {
  if (train.rows() == 0) fail(ErrorKind::InsufficientRows, "cannot fit a scaler on zero rows");
  const std::size_t cols = train.cols();
  const double n = static_cast<double>(train.rows());
  Scaler scaler;
  scaler.mean.assign(cols, 0.0);
  scaler.stddev.assign(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) sum += train(r, c);
    scaler.mean[c] = sum / n;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    double ss = 0.0;
    bool constant = true;
    const double first = train(0, c);
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double d = train(r, c) - scaler.mean[c];
      ss += d * d;
      if (train(r, c) != first) constant = false;
    }
    scaler.stddev[c] = constant ? 0.0 : std::sqrt(ss / n);  // population form
  }
  return scaler;
}

StandardizedSplit standardize(const MatrixView& train, const MatrixView& test) {
  StandardizedSplit out;
  out.train = train.materialize();
  out.test = test.materialize();
  out.scaler = fit_scaler(out.train);
  out.scaler.apply(out.train);
  out.scaler.apply(out.test);
  return out;
}

void write_dataset_csv(std::ostream& out, const WindowedDataset& ds) {
  std::string buffer;
  for (const auto& label : ds.column_labels) {
    buffer += label;
    buffer += ',';
  }
  buffer += "target\n";
  char scratch[32];
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t c = 0; c < ds.features.cols(); ++c) {
      const auto [ptr, ec] = std::to_chars(scratch, scratch + sizeof(scratch), ds.features(r, c));
      (void)ec;
      buffer.append(scratch, ptr);
      buffer += ',';
    }
    const auto [ptr, ec] = std::to_chars(scratch, scratch + sizeof(scratch), ds.targets[r]);
    (void)ec;
    buffer.append(scratch, ptr);
    buffer += '\n';
  }
  out << buffer;
}

}  // namespace enercast
