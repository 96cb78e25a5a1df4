#include "testrl/rl_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "testrl/errors.hpp"

namespace testrl {

double cross_entropy_loss(std::span<const double> token_probs) {
  double loss = 0.0;
  for (double p : token_probs) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("token probability " + std::to_string(p) + " outside (0, 1]");
    loss -= std::log(p);
  }
  return loss;
}

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size())
    throw LengthMismatch("length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

double mse_loss(std::span<const double> pred, std::span<const double> target) {
  check_lengths(pred, target);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += (pred[i] - target[i]) * (pred[i] - target[i]);
  return sum / static_cast<double>(pred.size());
}

std::vector<double> mse_gradient(std::span<const double> pred, std::span<const double> target) {
  check_lengths(pred, target);
  std::vector<double> g(pred.size());
  const double scale = 2.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) g[i] = scale * (pred[i] - target[i]);
  return g;
}

double kl_penalized_reward(double rhat, double kl, double beta) { return rhat - beta * kl; }

double TrajectoryStep::ratio() const { return std::exp(logprob_new - logprob_old); }

double clip(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double clipped_surrogate(const TrajectoryStep& step, double epsilon) {
  const double r = step.ratio();
  return std::min(r * step.advantage, clip(r, 1.0 - epsilon, 1.0 + epsilon) * step.advantage);
}

double clipped_surrogate_gradient(const TrajectoryStep& step, double epsilon) {
  const double r = step.ratio();
  const double unclipped = r * step.advantage;
  const double clipped = clip(r, 1.0 - epsilon, 1.0 + epsilon) * step.advantage;
  if (unclipped <= clipped) return unclipped;  // d(r A)/d logprob_new = r A
  return 0.0;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw LengthMismatch("distributions differ in length");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw DomainError("q is zero where p is positive");
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

std::vector<double> softmax(std::span<const double> logits, double temperature) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  double hi = logits[0] / temperature;
  for (double l : logits) hi = std::max(hi, l / temperature);
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] / temperature - hi);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
  return out;
}

}  // namespace testrl
