#include "enercast/model.hpp"

#include <chrono>

#include "enercast/error.hpp"

namespace enercast {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

MlpParams mlp_params_from(const ModelSpec& spec) {
  MlpParams params;
  params.hidden_layers.clear();
  const auto h1 = static_cast<std::size_t>(spec.hyper_or_default("hidden1"));
  const auto h2 = static_cast<std::size_t>(spec.hyper_or_default("hidden2"));
  params.hidden_layers.push_back(h1);
  if (h2 > 0) params.hidden_layers.push_back(h2);
  params.epochs = static_cast<std::size_t>(spec.hyper_or_default("epochs"));
  params.step = spec.hyper_or_default("step");
  params.batch_size = static_cast<std::size_t>(spec.hyper_or_default("batch"));
  params.seed = spec.rng_seed;
  return params;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const json& doc) {
  Matrix m(doc.at("rows").get<std::size_t>(), doc.at("cols").get<std::size_t>());
  const auto& rows = doc.at("data");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

json tree_to_json(const RegressionTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes()) {
    nodes.push_back({{"left", n.left},
                     {"right", n.right},
                     {"feature", n.feature},
                     {"threshold", n.threshold},
                     {"value", n.value},
                     {"count", n.count}});
  }
  return nodes;
}

RegressionTree tree_from_json(const json& nodes) {
  RegressionTree tree;
  for (const auto& n : nodes) {
    TreeNode node;
    node.left = n.at("left").get<int>();
    node.right = n.at("right").get<int>();
    node.feature = n.at("feature").get<std::size_t>();
    node.threshold = n.at("threshold").get<double>();
    node.value = n.at("value").get<double>();
    node.count = n.at("count").get<std::size_t>();
    tree.mutable_nodes().push_back(node);
  }
  return tree;
}

}  // namespace

const char* algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::ols: return "ols";
    case Algorithm::ridge: return "ridge";
    case Algorithm::lasso: return "lasso";
    case Algorithm::knn: return "knn";
    case Algorithm::tree: return "tree";
    case Algorithm::gbt: return "gbt";
    case Algorithm::svr: return "svr";
    case Algorithm::mlp_complex: return "mlp_complex";
    case Algorithm::mlp_simple: return "mlp_simple";
  }
  return "?";
}

const char* algorithm_display_name(Algorithm a) {
  switch (a) {
    case Algorithm::ols: return "Ordinary Least Squares";
    case Algorithm::ridge: return "Ridge Linear Regression";
    case Algorithm::lasso: return "Lasso Linear Regression";
    case Algorithm::knn: return "K Nearest Neighbors";
    case Algorithm::tree: return "Decision Tree";
    case Algorithm::gbt: return "Gradient Boosting";
    case Algorithm::svr: return "Support Vector Machine";
    case Algorithm::mlp_complex: return "ANN #1 (complex)";
    case Algorithm::mlp_simple: return "ANN #2 (simple)";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_id(std::string_view id) {
  for (Algorithm a : kAllAlgorithms) {
    if (id == algorithm_id(a)) return a;
  }
  return std::nullopt;
}

HyperMap default_hyperparameters(Algorithm a) {
  switch (a) {
    case Algorithm::ols:
      return {};
    case Algorithm::ridge:
      return {{"lambda", 1.0}};
    case Algorithm::lasso:
      return {{"lambda", 0.01}, {"max_iter", 10000}, {"tol", 1e-6}};
    case Algorithm::knn:
      return {{"k", 5}};
    case Algorithm::tree:
      return {{"max_depth", 12}, {"min_samples_leaf", 5}};
    case Algorithm::gbt:
      return {{"n_trees", 100}, {"learning_rate", 0.1}, {"max_depth", 3}};
    case Algorithm::svr:
      return {{"epsilon", 0.1}, {"C", 1.0}, {"epochs", 120}, {"step", 0.01}};
    case Algorithm::mlp_complex:
      return {{"hidden1", 64}, {"hidden2", 64}, {"epochs", 50}, {"step", 1e-3}, {"batch", 32}};
    case Algorithm::mlp_simple:
      return {{"hidden1", 4}, {"hidden2", 0}, {"epochs", 50}, {"step", 1e-3}, {"batch", 32}};
  }
  return {};
}

double ModelSpec::hyper_or_default(const std::string& key) const {
  const auto it = hyper.find(key);
  if (it != hyper.end()) return it->second;
  const HyperMap defaults = default_hyperparameters(algorithm);
  const auto def = defaults.find(key);
  if (def == defaults.end()) {
    fail(ErrorKind::Usage, std::string("unknown hyperparameter '") + key + "' for " +
                               algorithm_id(algorithm));
  }
  return def->second;
}

bool algorithm_needs_scaling(Algorithm a) {
  return a == Algorithm::knn || a == Algorithm::svr || a == Algorithm::mlp_complex ||
         a == Algorithm::mlp_simple;
}

TrainedModel fit_model(const ModelSpec& spec, const Matrix& X, std::span<const double> y,
                       Exec exec) {
  TrainedModel model;
  model.spec = spec;
  model.n_features = X.cols();

  const Matrix* features = &X;
  Matrix scaled;
  if (algorithm_needs_scaling(spec.algorithm)) {
    model.scaler = fit_scaler(X);
    scaled = X;
    model.scaler->apply(scaled);
    features = &scaled;
  }

  const auto start = std::chrono::steady_clock::now();
  switch (spec.algorithm) {
    case Algorithm::ols:
      model.payload = solve_ols(*features, y);
      break;
    case Algorithm::ridge:
      model.payload = solve_ridge(*features, y, spec.hyper_or_default("lambda"));
      break;
    case Algorithm::lasso: {
      LassoOptions options;
      options.lambda = spec.hyper_or_default("lambda");
      options.max_iter = static_cast<std::size_t>(spec.hyper_or_default("max_iter"));
      options.tol = spec.hyper_or_default("tol");
      model.payload = solve_lasso(*features, y, options);
      break;
    }
    case Algorithm::knn:
      model.payload =
          knn_fit(*features, y, static_cast<std::size_t>(spec.hyper_or_default("k")));
      break;
    case Algorithm::tree: {
      TreeParams params;
      params.max_depth = static_cast<std::size_t>(spec.hyper_or_default("max_depth"));
      params.min_samples_leaf =
          static_cast<std::size_t>(spec.hyper_or_default("min_samples_leaf"));
      model.payload = RegressionTree::fit(*features, y, params, exec);
      break;
    }
    case Algorithm::gbt: {
      GbtParams params;
      params.n_trees = static_cast<std::size_t>(spec.hyper_or_default("n_trees"));
      params.learning_rate = spec.hyper_or_default("learning_rate");
      params.max_depth = static_cast<std::size_t>(spec.hyper_or_default("max_depth"));
      model.payload = GradientBoostedTrees::fit(*features, y, params, exec);
      break;
    }
    case Algorithm::svr: {
      SvrParams params;
      params.epsilon = spec.hyper_or_default("epsilon");
      params.C = spec.hyper_or_default("C");
      params.epochs = static_cast<std::size_t>(spec.hyper_or_default("epochs"));
      params.step = spec.hyper_or_default("step");
      params.seed = spec.rng_seed;
      model.payload = fit_svr(*features, y, params);
      break;
    }
    case Algorithm::mlp_complex:
    case Algorithm::mlp_simple: {
      Mlp net = Mlp::init(features->cols(), mlp_params_from(spec));
      net.train(*features, y);
      model.payload = std::move(net);
      break;
    }
  }
  model.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return model;
}

std::vector<double> predict(const TrainedModel& model, const Matrix& X, Exec exec) {
  if (X.rows() == 0) return {};
  if (X.cols() != model.n_features) {
    fail(ErrorKind::ShapeMismatch, "predict expects " + std::to_string(model.n_features) +
                                       " features, got " + std::to_string(X.cols()));
  }

  const Matrix* features = &X;
  Matrix scaled;
  if (model.scaler) {
    scaled = X;
    model.scaler->apply(scaled);
    features = &scaled;
  }

  if (const auto* linear = std::get_if<LinearFit>(&model.payload)) {
    return linear_predict(*linear, *features);
  }
  if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
    return knn_predict(*knn, *features, exec);
  }
  if (const auto* tree = std::get_if<RegressionTree>(&model.payload)) {
    return tree->predict(*features);
  }
  if (const auto* gbt = std::get_if<GradientBoostedTrees>(&model.payload)) {
    return gbt->predict(*features);
  }
  if (const auto* svr = std::get_if<SvrModel>(&model.payload)) {
    return svr_predict(*svr, *features);
  }
  const auto& mlp = std::get<Mlp>(model.payload);
  return mlp.predict(*features);
}

nlohmann::ordered_json model_to_json(const TrainedModel& model) {
  ordered_json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["algorithm"] = algorithm_id(model.spec.algorithm);
  doc["rng_seed"] = model.spec.rng_seed;
  doc["n_features"] = model.n_features;
  doc["hyperparameters"] = model.spec.hyper;
  if (model.scaler) {
    doc["scaler"] = {{"mean", model.scaler->mean}, {"stddev", model.scaler->stddev}};
  }

  json params;
  if (const auto* linear = std::get_if<LinearFit>(&model.payload)) {
    params = {{"coefficients", linear->coefficients},
              {"intercept", linear->intercept},
              {"rank", linear->rank},
              {"dropped_columns", linear->dropped_columns},
              {"converged", linear->converged}};
  } else if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
    params = {{"k", knn->k},
              {"train_features", matrix_to_json(knn->train_features)},
              {"train_targets", knn->train_targets}};
  } else if (const auto* tree = std::get_if<RegressionTree>(&model.payload)) {
    params = {{"nodes", tree_to_json(*tree)}};
  } else if (const auto* gbt = std::get_if<GradientBoostedTrees>(&model.payload)) {
    json trees = json::array();
    for (const auto& tree : gbt->trees()) trees.push_back(tree_to_json(tree));
    params = {{"base", gbt->base()}, {"learning_rate", gbt->learning_rate()},
              {"trees", std::move(trees)}};
  } else if (const auto* svr = std::get_if<SvrModel>(&model.payload)) {
    params = {{"weights", svr->weights}, {"bias", svr->bias}};
  } else {
    const auto& mlp = std::get<Mlp>(model.payload);
    params = {{"layer_sizes", mlp.layer_sizes()}, {"weights", mlp.flat_weights()}};
  }
  doc["parameters"] = std::move(params);
  return doc;
}

TrainedModel model_from_json(const nlohmann::json& doc) {
  if (doc.at("format_version").get<int>() != kModelFormatVersion) {
    fail(ErrorKind::StaleArtifact, "unsupported model format version");
  }
  TrainedModel model;
  const auto algorithm = algorithm_from_id(doc.at("algorithm").get<std::string>());
  if (!algorithm) fail(ErrorKind::StaleArtifact, "unknown algorithm id in model document");
  model.spec.algorithm = *algorithm;
  model.spec.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
  model.spec.hyper = doc.at("hyperparameters").get<HyperMap>();
  model.n_features = doc.at("n_features").get<std::size_t>();
  if (doc.contains("scaler")) {
    Scaler scaler;
    scaler.mean = doc["scaler"].at("mean").get<std::vector<double>>();
    scaler.stddev = doc["scaler"].at("stddev").get<std::vector<double>>();
    model.scaler = std::move(scaler);
  }

  const auto& params = doc.at("parameters");
  switch (model.spec.algorithm) {
    case Algorithm::ols:
    case Algorithm::ridge:
    case Algorithm::lasso: {
      LinearFit fit;
      fit.coefficients = params.at("coefficients").get<std::vector<double>>();
      fit.intercept = params.at("intercept").get<double>();
      fit.rank = params.at("rank").get<std::size_t>();
      fit.dropped_columns = params.at("dropped_columns").get<std::vector<std::size_t>>();
      fit.converged = params.at("converged").get<bool>();
      model.payload = std::move(fit);
      break;
    }
    case Algorithm::knn: {
      KnnModel knn;
      knn.k = params.at("k").get<std::size_t>();
      knn.train_features = matrix_from_json(params.at("train_features"));
      knn.train_targets = params.at("train_targets").get<std::vector<double>>();
      model.payload = std::move(knn);
      break;
    }
    case Algorithm::tree:
      model.payload = tree_from_json(params.at("nodes"));
      break;
    case Algorithm::gbt: {
      std::vector<RegressionTree> trees;
      for (const auto& tree : params.at("trees")) trees.push_back(tree_from_json(tree));
      model.payload = GradientBoostedTrees::from_parts(
          params.at("base").get<double>(), params.at("learning_rate").get<double>(),
          std::move(trees));
      break;
    }
    case Algorithm::svr: {
      SvrModel svr;
      svr.weights = params.at("weights").get<std::vector<double>>();
      svr.bias = params.at("bias").get<double>();
      model.payload = std::move(svr);
      break;
    }
    case Algorithm::mlp_complex:
    case Algorithm::mlp_simple: {
      MlpParams mlp_params = mlp_params_from(model.spec);
      const auto sizes = params.at("layer_sizes").get<std::vector<std::size_t>>();
      const auto flat = params.at("weights").get<std::vector<double>>();
      model.payload = Mlp::from_parts(sizes, mlp_params, flat);
      break;
    }
  }
  return model;
}

}  // namespace enercast
