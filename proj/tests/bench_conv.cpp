// Rough throughput probe for the conv path at autoencoder-realistic sizes.
// Not registered with ctest; run by hand when tuning.
#include <chrono>
#include <cstdio>

#include "mcpad/layers.hpp"
#include "mcpad/rng.hpp"

using namespace mcpad;

int main() {
  Rng rng(1);
  auto rnd = [&](std::vector<std::size_t> s) {
    TensorND t(std::move(s));
    for (auto& v : t.data) v = rng.uniform(-1, 1);
    return t;
  };
  TensorND x = rnd({3, 64, 64});
  TensorND k1 = rnd({16, 3, 5, 5});
  TensorND k2 = rnd({16, 16, 5, 5});
  TensorND k3 = rnd({16, 16, 4, 4});
  std::vector<double> b16(16, 0.01), b3(3, 0.01);

  const int iters = 200;
  auto t0 = std::chrono::steady_clock::now();
  double sink = 0.0;
  for (int i = 0; i < iters; ++i) {
    TensorND a1 = conv2d(x, k1, b16);
    auto p1 = maxpool2d(relu(a1), 2, 2);
    TensorND a2 = conv2d(p1.output, k2, b16);
    auto p2 = maxpool2d(relu(a2), 2, 2);
    TensorND a3 = conv2d(p2.output, k3, b16);
    auto p3 = maxpool2d(relu(a3), 2, 2);
    // decoder-ish mirror
    TensorND u1 = upsample_nearest(p3.output, 2);
    TensorND d1 = deconv2d(u1, rnd({16, 16, 4, 4}), b16);
    TensorND u2 = upsample_nearest(relu(d1), 2);
    TensorND d2 = deconv2d(u2, k2, b16);
    TensorND u3 = upsample_nearest(relu(d2), 2);
    TensorND d3 = deconv2d(u3, rnd({16, 3, 5, 5}), b3);
    // backward-ish: two heavy grads
    auto g1 = conv2d_backward(a1, x, k1);
    auto g2 = conv2d_backward(a2, p1.output, k2);
    sink += d3.data[0] + g1.grad_kernel.data[0] + g2.grad_input.data[0];
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::printf("approx %d pseudo fwd+partial bwd in %.3f s (%.2f ms each), sink=%g\n",
              iters, secs, 1000.0 * secs / iters, sink);
  return 0;
}
