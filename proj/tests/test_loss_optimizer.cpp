#include <catch2/catch_amalgamated.hpp>

#include "mcpad/loss.hpp"
#include "mcpad/optimizer.hpp"
#include "support/gradcheck.hpp"

using namespace mcpad;

TEST_CASE("mse_loss") {
  TensorND a({2}, std::vector<double>{0.0, 0.0});
  TensorND b({2}, std::vector<double>{1.0, 3.0});
  CHECK(mse_loss(a, a).value == 0.0);
  CHECK(mse_loss(a, b).value == Catch::Approx(5.0));
  TensorND c({3}, 0.0);
  CHECK_THROWS_AS(mse_loss(a, c), ValidationError);
}

TEST_CASE("bce_loss closed forms") {
  CHECK(bce_loss(0.5, 1).value == Catch::Approx(std::log(2.0)));
  CHECK(bce_loss(1.0 - kBceEps, 1).value == Catch::Approx(0.0).margin(1e-6));
  CHECK(bce_loss(0.75, 0).value == Catch::Approx(std::log(4.0)));
  CHECK_THROWS_AS(bce_loss(0.5, 2), ValidationError);
}

TEST_CASE("adam first step with bias correction") {
  ParamTensor p(TensorND({1}, std::vector<double>{1.0}));
  p.grad.data[0] = 1.0;
  AdamConfig cfg;
  cfg.learning_rate = 0.1;
  std::vector<ParamTensor*> params{&p};
  Adam opt(params, cfg);
  opt.step(params);
  // m_hat = v_hat = 1 at t=1, so the update is lr/(1+eps) ~ lr
  CHECK(p.value.data[0] == Catch::Approx(0.9).epsilon(1e-6));
  CHECK(opt.step_count() == 1);
}

TEST_CASE("adam freezing leaves values bit-identical") {
  Rng rng(4);
  ParamTensor frozen(gradcheck::random_tensor({3, 3}, rng));
  ParamTensor live(gradcheck::random_tensor({2}, rng));
  frozen.trainable = false;
  const std::vector<double> before = frozen.value.data;
  std::vector<ParamTensor*> params{&frozen, &live};
  Adam opt(params);
  for (int i = 0; i < 25; ++i) {
    for (auto* p : params) {
      for (auto& g : p->grad.data) g = rng.uniform(-1, 1);
    }
    opt.step(params);
  }
  CHECK(frozen.value.data == before);
  CHECK(live.value.data != std::vector<double>(live.value.data.size(), 0.0));
  CHECK(opt.step_count() == 25);
}

TEST_CASE("adam zero grads leave values unchanged, counter advances") {
  ParamTensor p(TensorND({2}, std::vector<double>{0.5, -0.5}));
  std::vector<ParamTensor*> params{&p};
  Adam opt(params);
  const std::vector<double> before = p.value.data;
  p.zero_grad();
  opt.step(params);
  opt.step(params);
  CHECK(p.value.data == before);
  CHECK(opt.step_count() == 2);
}

TEST_CASE("adam rejects parameter count mismatch") {
  ParamTensor p(TensorND({1}, std::vector<double>{1.0}));
  std::vector<ParamTensor*> params{&p};
  Adam opt(params);
  std::vector<ParamTensor*> two{&p, &p};
  CHECK_THROWS_AS(opt.step(two), ValidationError);
}

TEST_CASE("adam float32 snapping keeps params on the f32 grid") {
  ParamTensor p(TensorND({1}, std::vector<double>{double(float(0.7))}));
  AdamConfig cfg;
  cfg.float32_params = true;
  std::vector<ParamTensor*> params{&p};
  Adam opt(params, cfg);
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    p.grad.data[0] = rng.uniform(-1, 1);
    opt.step(params);
    CHECK(p.value.data[0] == double(float(p.value.data[0])));
  }
}
