#pragma once

#include <cmath>

#include "mcpad/tensor.hpp"

namespace mcpad {

struct MseResult {
  double value;
  TensorND grad;  // d loss / d prediction
};

inline MseResult mse_loss(const TensorND& prediction, const TensorND& target) {
  require(prediction.same_shape(target), "mse_loss: shape mismatch ",
          prediction.shape_str(), " vs ", target.shape_str());
  const std::size_t n = prediction.numel();
  require(n > 0, "mse_loss: empty tensors");
  MseResult r{0.0, TensorND(prediction.shape)};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = prediction.data[i] - target.data[i];
    r.value += d * d;
    r.grad.data[i] = 2.0 * d / double(n);
  }
  r.value /= double(n);
  return r;
}

inline constexpr double kBceEps = 1e-7;

struct BceResult {
  double value;
  double grad;  // d loss / d probability, taken at the clamped probability
};

inline BceResult bce_loss(double p, int label) {
  require(label == 0 || label == 1, "bce_loss: label must be 0 or 1, got ", label);
  const double pc = std::min(1.0 - kBceEps, std::max(kBceEps, p));
  BceResult r{};
  if (label == 1) {
    r.value = -std::log(pc);
    r.grad = -1.0 / pc;
  } else {
    r.value = -std::log(1.0 - pc);
    r.grad = 1.0 / (1.0 - pc);
  }
  return r;
}

}  // namespace mcpad
