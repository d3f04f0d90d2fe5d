#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mcpad/common.hpp"

namespace mcpad {

// Dense row-major n-d array of doubles. Carrier for images, activations
// and parameters throughout the numeric core.
struct TensorND {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  TensorND() = default;
  explicit TensorND(std::vector<std::size_t> s, double fill = 0.0)
      : shape(std::move(s)), data(numel_of(shape), fill) {}
  TensorND(std::vector<std::size_t> s, std::vector<double> d)
      : shape(std::move(s)), data(std::move(d)) {
    require(data.size() == numel_of(shape), "TensorND: shape/product mismatch: shape=",
            shape_str(), " data length=", data.size());
  }

  static std::size_t numel_of(const std::vector<std::size_t>& s) {
    std::size_t n = 1;
    for (std::size_t d : s) n *= d;
    return n;
  }

  std::size_t numel() const { return data.size(); }
  std::size_t dims() const { return shape.size(); }
  std::size_t dim(std::size_t i) const { return shape.at(i); }

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }

  // 3-d access (C, H, W)
  double& at3(std::size_t c, std::size_t y, std::size_t x) {
    return data[(c * shape[1] + y) * shape[2] + x];
  }
  double at3(std::size_t c, std::size_t y, std::size_t x) const {
    return data[(c * shape[1] + y) * shape[2] + x];
  }

  // 4-d access (O, I, Ky, Kx)
  double& at4(std::size_t o, std::size_t i, std::size_t ky, std::size_t kx) {
    return data[((o * shape[1] + i) * shape[2] + ky) * shape[3] + kx];
  }
  double at4(std::size_t o, std::size_t i, std::size_t ky, std::size_t kx) const {
    return data[((o * shape[1] + i) * shape[2] + ky) * shape[3] + kx];
  }

  bool same_shape(const TensorND& o) const { return shape == o.shape; }

  std::string shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(shape[i]);
    }
    return s + "]";
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

inline double dot(const TensorND& a, const TensorND& b) {
  require(a.numel() == b.numel(), "dot: length mismatch ", a.shape_str(), " vs ",
          b.shape_str());
  double s = 0.0;
  for (std::size_t i = 0; i < a.numel(); ++i) s += a.data[i] * b.data[i];
  return s;
}

// Trainable parameter: value plus gradient accumulator. Optimizer steps
// leave the value untouched (bit-identical) while trainable == false.
struct ParamTensor {
  TensorND value;
  TensorND grad;
  bool trainable = true;

  ParamTensor() = default;
  explicit ParamTensor(TensorND v) : value(std::move(v)), grad(value.shape, 0.0) {}

  void zero_grad() { grad.fill(0.0); }
};

}  // namespace mcpad
