#include <doctest.h>

#include <cmath>

#include "testrl/errors.hpp"
#include "testrl/random.hpp"
#include "testrl/rl_math.hpp"

using namespace testrl;
using V = std::vector<double>;

TEST_CASE("cross entropy") {
  CHECK(cross_entropy_loss(V{1.0, 1.0}) == 0.0);
  CHECK(cross_entropy_loss(V{std::exp(-1.0)}) == doctest::Approx(1.0));
  CHECK(cross_entropy_loss(V{0.5, 0.25}) == doctest::Approx(2.0794).epsilon(1e-4));
  CHECK_THROWS_AS(cross_entropy_loss(V{0.0}), DomainError);
  CHECK_THROWS_AS(cross_entropy_loss(V{1.5}), DomainError);
}

TEST_CASE("mean squared error") {
  CHECK(mse_loss(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
  CHECK(mse_loss(V{0}, V{2}) == 4.0);
  CHECK(mse_loss(V{1, -1}, V{0, 0}) == 1.0);
  CHECK(mse_gradient(V{1, -1}, V{0, 0}) == V{1, -1});
  CHECK_THROWS_AS(mse_loss(V{1}, V{1, 2}), LengthMismatch);
  CHECK_THROWS_AS(mse_loss(V{}, V{}), LengthMismatch);
}

TEST_CASE("kl penalized reward") {
  CHECK(kl_penalized_reward(1, 0, 7) == 1);
  CHECK(kl_penalized_reward(1, 0.5, 0.2) == doctest::Approx(0.9));
  CHECK(kl_penalized_reward(-1, 2, 0.5) == doctest::Approx(-2));
}

TEST_CASE("clipped surrogate examples") {
  const auto step = [](double r, double a) { return TrajectoryStep{0, 0, std::log(r), 0.0, a}; };
  CHECK(clipped_surrogate(step(1.0, 2.0), 0.2) == doctest::Approx(2.0));
  CHECK(clipped_surrogate(step(2.0, 1.0), 0.2) == doctest::Approx(1.2));
  CHECK(clipped_surrogate(step(0.5, -1.0), 0.2) == doctest::Approx(-0.8));
  CHECK(clipped_surrogate_gradient(step(2.0, 1.0), 0.2) == 0.0);
  CHECK(clipped_surrogate_gradient(step(2.0, -1.0), 0.2) == doctest::Approx(-2.0));
  CHECK(clip(5, 0, 1) == 1);
  CHECK(clip(-5, 0, 1) == 0);
  CHECK(clip(0.5, 0, 1) == 0.5);
}

TEST_CASE("kl divergence") {
  CHECK(kl_divergence(V{0.3, 0.7}, V{0.3, 0.7}) == 0.0);
  CHECK(kl_divergence(V{1, 0}, V{0.5, 0.5}) == doctest::Approx(std::log(2.0)));
  CHECK(kl_divergence(V{0.5, 0.5}, V{0.9, 0.1}) == doctest::Approx(0.5108).epsilon(1e-4));
  CHECK_THROWS_AS(kl_divergence(V{0.5, 0.5}, V{1, 0}), DomainError);
  CHECK_THROWS_AS(kl_divergence(V{1}, V{0.5, 0.5}), LengthMismatch);
}

TEST_CASE("softmax") {
  const V p = softmax(V{1000, 1000, 1000});
  for (double x : p) CHECK(x == doctest::Approx(1.0 / 3));
  const V q = softmax(V{0, std::log(3.0)});
  CHECK(q[0] == doctest::Approx(0.25));
  const V hot = softmax(V{0, 1}, 0.01);
  CHECK(hot[1] > 0.999);
  CHECK(softmax(V{}).empty());
}

TEST_CASE("finite differences agree with analytic gradients") {
  Rng rng(1);
  const double h = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 6);
    V pred(n), target(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = 4 * uniform_unit(rng) - 2;
      target[i] = 4 * uniform_unit(rng) - 2;
    }
    const V g = mse_gradient(pred, target);
    for (std::size_t i = 0; i < n; ++i) {
      V up = pred, down = pred;
      up[i] += h;
      down[i] -= h;
      const double fd = (mse_loss(up, target) - mse_loss(down, target)) / (2 * h);
      CHECK(fd == doctest::Approx(g[i]).epsilon(1e-5).scale(1.0));
    }

    TrajectoryStep s{0, 0, uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5, 4 * uniform_unit(rng) - 2};
    const double eps = 0.2;
    const double r = s.ratio();
    if (std::abs(r - (1 - eps)) < 1e-4 || std::abs(r - (1 + eps)) < 1e-4) continue;  // kink
    TrajectoryStep up = s, down = s;
    up.logprob_new += h;
    down.logprob_new -= h;
    const double fd = (clipped_surrogate(up, eps) - clipped_surrogate(down, eps)) / (2 * h);
    CHECK(fd == doctest::Approx(clipped_surrogate_gradient(s, eps)).epsilon(1e-5).scale(1.0));
  }
}
