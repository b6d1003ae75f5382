#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"

namespace enercast {

struct MlpParams {
  std::vector<std::size_t> hidden_layers = {64, 64};
  std::size_t epochs = 50;
  double step = 1e-3;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

// Fully connected net with rectified-linear hidden units and a linear
// output, trained by seeded mini-batch gradient descent on squared loss.
// Weights init uniform with scale 1/sqrt(fan_in), biases zero. The kept
// weights are the epoch snapshot with the lowest full-batch training MSE
// (the init counts as epoch 0), so training never ends worse than it began.
class Mlp {
 public:
  static Mlp init(std::size_t inputs, const MlpParams& params);

  // Throws DivergedLoss when the loss turns NaN/inf.
  void train(const Matrix& X, std::span<const double> y);

  double predict_one(std::span<const double> x) const;
  std::vector<double> predict(const Matrix& X) const;

  double mse(const Matrix& X, std::span<const double> y) const;

  // Flat weight access for gradient checks and serialization; layout is
  // layer-major: W0 row-major, b0, W1, b1, ...
  std::vector<double> flat_weights() const;
  void set_flat_weights(std::span<const double> flat);
  std::vector<double> flat_gradient(const Matrix& X, std::span<const double> y) const;

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  const MlpParams& params() const { return params_; }
  const std::vector<double>& epoch_mse_trace() const { return epoch_mse_; }

  static Mlp from_parts(std::vector<std::size_t> sizes, const MlpParams& params,
                        std::span<const double> flat);

 private:
  struct Gradients;
  void forward(std::span<const double> x, std::vector<std::vector<double>>& activations,
               std::vector<std::vector<double>>& preacts) const;
  void accumulate_gradient(std::span<const double> x, double target, double scale,
                           Gradients& grads, std::vector<std::vector<double>>& activations,
                           std::vector<std::vector<double>>& preacts) const;

  std::vector<std::size_t> sizes_;  // input, hidden..., 1
  std::vector<Matrix> weights_;     // weights_[l] is sizes_[l+1] x sizes_[l]
  std::vector<std::vector<double>> biases_;
  MlpParams params_;
  std::vector<double> epoch_mse_;
};

}  // namespace enercast
