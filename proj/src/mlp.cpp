#include "enercast/mlp.hpp"

#include <cmath>
#include <numeric>

#include "enercast/error.hpp"
#include "enercast/rng.hpp"

namespace enercast {

struct Mlp::Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;

  explicit Gradients(const Mlp& net) {
    for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
      weights.emplace_back(net.sizes_[l + 1], net.sizes_[l]);
      biases.emplace_back(net.sizes_[l + 1], 0.0);
    }
  }

  void reset() {
    for (auto& w : weights) {
      for (double& v : w.data()) v = 0.0;
    }
    for (auto& b : biases) {
      for (double& v : b) v = 0.0;
    }
  }
};

Mlp Mlp::init(std::size_t inputs, const MlpParams& params) {
  if (inputs == 0) fail(ErrorKind::Usage, "mlp: zero input width");
  if (params.hidden_layers.empty()) fail(ErrorKind::Usage, "mlp: hidden layer list is empty");

  Mlp net;
  net.params_ = params;
  net.sizes_.push_back(inputs);
  for (std::size_t h : params.hidden_layers) net.sizes_.push_back(h);
  net.sizes_.push_back(1);

  Rng rng(derive_stream(params.seed, 0x3a11));
  for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
    const std::size_t fan_in = net.sizes_[l];
    const std::size_t fan_out = net.sizes_[l + 1];
    const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Matrix w(fan_out, fan_in);
    for (std::size_t r = 0; r < fan_out; ++r) {
      for (std::size_t c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-scale, scale);
    }
    net.weights_.push_back(std::move(w));
    net.biases_.emplace_back(fan_out, 0.0);
  }
  return net;
}

void Mlp::forward(std::span<const double> x, std::vector<std::vector<double>>& activations,
                  std::vector<std::vector<double>>& preacts) const {
  const std::size_t layers = weights_.size();
  activations.resize(layers + 1);
  preacts.resize(layers);
  activations[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const Matrix& w = weights_[l];
    preacts[l].assign(w.rows(), 0.0);
    for (std::size_t r = 0; r < w.rows(); ++r) {
      double acc = biases_[l][r];
      const auto row = w.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * activations[l][c];
      preacts[l][r] = acc;
    }
    activations[l + 1].resize(w.rows());
    const bool output_layer = l + 1 == layers;
    for (std::size_t r = 0; r < w.rows(); ++r) {
      activations[l + 1][r] = output_layer ? preacts[l][r] : std::max(0.0, preacts[l][r]);
    }
  }
}

void Mlp::accumulate_gradient(std::span<const double> x, double target, double scale,
                              Gradients& grads, std::vector<std::vector<double>>& activations,
                              std::vector<std::vector<double>>& preacts) const {
  forward(x, activations, preacts);
  const std::size_t layers = weights_.size();

  // Squared loss (pred - y)^2 contributes 2 * err through the linear output.
  std::vector<double> delta{2.0 * (activations[layers][0] - target) * scale};
  for (std::size_t l = layers; l-- > 0;) {
    const Matrix& w = weights_[l];
    for (std::size_t r = 0; r < w.rows(); ++r) {
      grads.biases[l][r] += delta[r];
      auto grow = grads.weights[l].row(r);
      for (std::size_t c = 0; c < grow.size(); ++c) grow[c] += delta[r] * activations[l][c];
    }
    if (l == 0) break;
    std::vector<double> next(w.cols(), 0.0);
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (preacts[l - 1][c] <= 0.0) continue;  // ReLU gate
      double acc = 0.0;
      for (std::size_t r = 0; r < w.rows(); ++r) acc += w(r, c) * delta[r];
      next[c] = acc;
    }
    delta = std::move(next);
  }
}

void Mlp::train(const Matrix& X, std::span<const double> y) {
  if (X.rows() != y.size()) fail(ErrorKind::LengthMismatch, "mlp: X rows and y length differ");
  if (X.rows() == 0) fail(ErrorKind::InsufficientRows, "mlp: cannot train on zero rows");
  if (X.cols() != sizes_.front()) fail(ErrorKind::ShapeMismatch, "mlp: feature width mismatch");

  epoch_mse_.clear();
  double best_mse = mse(X, y);
  epoch_mse_.push_back(best_mse);
  std::vector<Matrix> best_weights = weights_;
  std::vector<std::vector<double>> best_biases = biases_;

  Rng rng(derive_stream(params_.seed, 0x3a12));
  std::vector<std::size_t> order(X.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::max<std::size_t>(1, params_.batch_size);

  Gradients grads(*this);
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> preacts;

  for (std::size_t epoch = 0; epoch < params_.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += batch) {
      const std::size_t end = std::min(order.size(), begin + batch);
      const double scale = 1.0 / static_cast<double>(end - begin);
      grads.reset();
      for (std::size_t i = begin; i < end; ++i) {
        accumulate_gradient(X.row(order[i]), y[order[i]], scale, grads, activations, preacts);
      }
      for (std::size_t l = 0; l < weights_.size(); ++l) {
        auto wdata = weights_[l].data();
        const auto gdata = grads.weights[l].data();
        for (std::size_t i = 0; i < wdata.size(); ++i) wdata[i] -= params_.step * gdata[i];
        for (std::size_t r = 0; r < biases_[l].size(); ++r) {
          biases_[l][r] -= params_.step * grads.biases[l][r];
        }
      }
    }

    const double epoch_mse = mse(X, y);
    if (!std::isfinite(epoch_mse)) {
      fail(ErrorKind::DivergedLoss,
           "mlp: training loss became non-finite at epoch " + std::to_string(epoch + 1) +
               "; lower the step size");
    }
    epoch_mse_.push_back(epoch_mse);
    if (epoch_mse < best_mse) {
      best_mse = epoch_mse;
      best_weights = weights_;
      best_biases = biases_;
    }
  }

  weights_ = std::move(best_weights);
  biases_ = std::move(best_biases);
}

double Mlp::predict_one(std::span<const double> x) const {
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> preacts;
  forward(x, activations, preacts);
  return activations.back()[0];
}

std::vector<double> Mlp::predict(const Matrix& X) const {
  if (X.rows() > 0 && X.cols() != sizes_.front()) {
    fail(ErrorKind::ShapeMismatch, "mlp: feature width mismatch");
  }
  std::vector<double> out(X.rows(), 0.0);
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> preacts;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    forward(X.row(i), activations, preacts);
    out[i] = activations.back()[0];
  }
  return out;
}

double Mlp::mse(const Matrix& X, std::span<const double> y) const {
  double sse = 0.0;
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> preacts;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    forward(X.row(i), activations, preacts);
    const double err = activations.back()[0] - y[i];
    sse += err * err;
  }
  return sse / static_cast<double>(X.rows());
}

std::vector<double> Mlp::flat_weights() const {
  std::vector<double> flat;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const auto data = weights_[l].data();
    flat.insert(flat.end(), data.begin(), data.end());
    flat.insert(flat.end(), biases_[l].begin(), biases_[l].end());
  }
  return flat;
}

void Mlp::set_flat_weights(std::span<const double> flat) {
  std::size_t pos = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    auto data = weights_[l].data();
    for (double& v : data) v = flat[pos++];
    for (double& v : biases_[l]) v = flat[pos++];
  }
  if (pos != flat.size()) fail(ErrorKind::ShapeMismatch, "mlp: flat weight size mismatch");
}

std::vector<double> Mlp::flat_gradient(const Matrix& X, std::span<const double> y) const {
  Gradients grads(*this);
  grads.reset();
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> preacts;
  const double scale = 1.0 / static_cast<double>(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    accumulate_gradient(X.row(i), y[i], scale, grads, activations, preacts);
  }
  std::vector<double> flat;
  for (std::size_t l = 0; l < grads.weights.size(); ++l) {
    const auto data = grads.weights[l].data();
    flat.insert(flat.end(), data.begin(), data.end());
    flat.insert(flat.end(), grads.biases[l].begin(), grads.biases[l].end());
  }
  return flat;
}

Mlp Mlp::from_parts(std::vector<std::size_t> sizes, const MlpParams& params,
                    std::span<const double> flat) {
  Mlp net;
  net.params_ = params;
  net.sizes_ = std::move(sizes);
  for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
    net.weights_.emplace_back(net.sizes_[l + 1], net.sizes_[l]);
    net.biases_.emplace_back(net.sizes_[l + 1], 0.0);
  }
  net.set_flat_weights(flat);
  return net;
}

}  // namespace enercast
