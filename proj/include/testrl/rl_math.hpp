#pragma once

#include <span>
#include <vector>

namespace testrl {

// -sum(log p). Throws DomainError unless every p lies in (0, 1].
double cross_entropy_loss(std::span<const double> token_probs);

// Mean squared difference. Throws LengthMismatch on unequal or empty input.
double mse_loss(std::span<const double> pred, std::span<const double> target);
// d mse / d pred.
std::vector<double> mse_gradient(std::span<const double> pred, std::span<const double> target);

double kl_penalized_reward(double rhat, double kl, double beta);

struct TrajectoryStep {
  int state = 0;
  int action = 0;
  double logprob_new = 0.0;
  double logprob_old = 0.0;
  double advantage = 0.0;

  double ratio() const;
};

double clip(double x, double lo, double hi);

// min(r A, clip(r, 1 - eps, 1 + eps) A) for one step.
double clipped_surrogate(const TrajectoryStep& step, double epsilon);
// Derivative of clipped_surrogate with respect to logprob_new. Zero where
// the clipped branch is the minimum; the subgradient at the kink follows
// the unclipped branch.
double clipped_surrogate_gradient(const TrajectoryStep& step, double epsilon);

// sum p ln(p / q) with 0 ln 0 = 0. Throws LengthMismatch, or DomainError
// when q is zero where p is not.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Numerically stable softmax of `logits / temperature`.
std::vector<double> softmax(std::span<const double> logits, double temperature = 1.0);

}  // namespace testrl
