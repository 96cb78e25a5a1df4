#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testrl/reward.hpp"

namespace testrl {

// Linear regression over bag-of-token counts of the test text.
struct LinearRewardModel {
  std::vector<std::string> features;  // significant C# token texts
  std::vector<double> weights;
  double bias = 0.0;

  std::vector<double> featurize(std::string_view test) const;
  double predict(std::string_view test) const;
  double predict_features(std::span<const double> x) const;
};

struct RewardModelConfig {
  std::size_t epochs = 500;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
  double holdout_fraction = 0.10;
  std::size_t max_features = 2000;
  // Stop after this many epochs without a better held-out loss.
  std::size_t patience = 50;
};

struct RewardModelFit {
  LinearRewardModel model;
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  std::size_t best_epoch = 0;
};

// Full-batch gradient descent on the MSE between predictions and rewards,
// keeping the parameters with the lowest held-out loss. Features are
// standardized on the training rows while fitting and the step is capped at
// the inverse of the loss curvature; the returned weights apply to raw counts. Throws
// InsufficientData on empty input or when every reward is the same.
RewardModelFit train_reward_model(std::span<const LabeledRecord> labeled, const RewardModelConfig& cfg = {});

}  // namespace testrl
