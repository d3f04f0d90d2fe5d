#pragma once

#include <cmath>
#include <vector>

#include "mcpad/tensor.hpp"

namespace mcpad {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Snap updated values onto the float32 grid. Model parameters are stored
  // as 32-bit floats on disk; keeping them on that grid during training makes
  // serialization round trips lossless.
  bool float32_params = false;
};

// Adaptive-moment optimizer with per-parameter freezing. Frozen parameters
// are skipped entirely: value and moments stay bit-identical.
class Adam {
 public:
  explicit Adam(const std::vector<ParamTensor*>& params, AdamConfig cfg = {})
      : cfg_(cfg) {
    for (const ParamTensor* p : params) {
      m_.emplace_back(p->value.shape, 0.0);
      v_.emplace_back(p->value.shape, 0.0);
    }
  }

  std::size_t step_count() const { return step_; }
  const AdamConfig& config() const { return cfg_; }

  void step(const std::vector<ParamTensor*>& params) {
    require(params.size() == m_.size(), "optimizer_step: expected ", m_.size(),
            " parameters, got ", params.size());
    ++step_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, double(step_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, double(step_));
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
      ParamTensor& p = *params[pi];
      require(p.value.same_shape(m_[pi]), "optimizer_step: parameter ", pi,
              " shape changed: ", p.value.shape_str(), " vs ", m_[pi].shape_str());
      if (!p.trainable) continue;
      require(p.grad.same_shape(p.value), "optimizer_step: gradient missing for ",
              "trainable parameter ", pi);
      double* val = p.value.data.data();
      const double* g = p.grad.data.data();
      double* m = m_[pi].data.data();
      double* v = v_[pi].data.data();
      for (std::size_t i = 0; i < p.value.numel(); ++i) {
        m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g[i];
        v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        double nv = val[i] - cfg_.learning_rate * mhat / (std::sqrt(vhat) + cfg_.epsilon);
        if (cfg_.float32_params) nv = double(float(nv));
        val[i] = nv;
      }
    }
  }

 private:
  AdamConfig cfg_;
  std::size_t step_ = 0;
  std::vector<TensorND> m_, v_;
};

}  // namespace mcpad
