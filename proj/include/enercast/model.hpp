#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "enercast/dataset.hpp"
#include "enercast/gbt.hpp"
#include "enercast/knn.hpp"
#include "enercast/linear.hpp"
#include "enercast/matrix.hpp"
#include "enercast/mlp.hpp"
#include "enercast/parallel.hpp"
#include "enercast/svr.hpp"
#include "enercast/tree.hpp"

namespace enercast {

enum class Algorithm {
  ols,
  ridge,
  lasso,
  knn,
  tree,
  gbt,
  svr,
  mlp_complex,
  mlp_simple,
};

constexpr std::array<Algorithm, 9> kAllAlgorithms = {
    Algorithm::ols, Algorithm::ridge,       Algorithm::lasso,      Algorithm::knn, Algorithm::tree,
    Algorithm::gbt, Algorithm::svr,         Algorithm::mlp_complex, Algorithm::mlp_simple};

const char* algorithm_id(Algorithm a);          // short id, e.g. "ols"
const char* algorithm_display_name(Algorithm a);  // e.g. "Ordinary Least Squares"
std::optional<Algorithm> algorithm_from_id(std::string_view id);

using HyperMap = std::map<std::string, double>;

HyperMap default_hyperparameters(Algorithm a);

struct ModelSpec {
  Algorithm algorithm = Algorithm::ols;
  HyperMap hyper;  // missing keys fall back to the defaults
  std::uint64_t rng_seed = 0;

  double hyper_or_default(const std::string& key) const;
};

// Models that work on distances or gradients see z-scored features; the
// scaler is fit on the training data inside fit_model and stored with the
// model so predictions are self-contained.
bool algorithm_needs_scaling(Algorithm a);

struct TrainedModel {
  ModelSpec spec;
  std::size_t n_features = 0;
  std::optional<Scaler> scaler;
  std::variant<LinearFit, KnnModel, RegressionTree, GradientBoostedTrees, SvrModel, Mlp> payload;
  double fit_seconds = 0.0;
};

TrainedModel fit_model(const ModelSpec& spec, const Matrix& X, std::span<const double> y,
                       Exec exec = Exec::Parallel);

std::vector<double> predict(const TrainedModel& model, const Matrix& X,
                            Exec exec = Exec::Parallel);

// Versioned JSON payload for reload-and-predict.
nlohmann::ordered_json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& doc);

}  // namespace enercast
