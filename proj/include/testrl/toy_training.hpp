#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "testrl/policy.hpp"
#include "testrl/quality.hpp"
#include "testrl/reward.hpp"
#include "testrl/reward_model.hpp"

namespace testrl {

// A toy generation task: the policy emits code lines for the body of
// `Test<focal>()`. Most vocabulary entries are whole statements; a few are
// bare fragments that break the syntax when emitted.
struct ToyTask {
  std::vector<std::string> vocabulary;
  std::string focal_method = "Add";

  static ToyTask calculator();
  // Renders a completion as an MSTest method, one token per line.
  std::string render(const std::vector<int>& tokens, const PolicyTable& policy) const;
};

using RewardFn = std::function<double(const std::string& test)>;

// Analyzer-backed reward for the scheme.
RewardFn analyzer_reward(const RewardScheme& scheme, std::string focal_method);
// Learned reward model prediction on the rendered test.
RewardFn model_reward(LinearRewardModel model);

struct TrainConfig {
  double beta = 0.05;
  double epsilon = 0.2;
  double learning_rate = 0.5;
  std::size_t episodes = 2000;
  SamplingConfig sampling;
  std::uint64_t seed = 0;
  std::size_t batch_size = 16;
  std::size_t ppo_epochs = 4;
  // Weight of the newest episode in the moving reward baseline.
  double baseline_rate = 0.05;
  // KL over every row instead of the states the episode visited.
  bool full_state_kl = false;
  std::size_t eval_interval = 200;
  std::size_t eval_samples = 100;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct MetricPoint {
  std::size_t episode = 0;
  double mean_reward = 0.0;
  double mean_kl = 0.0;
  std::map<Property, double> frequency;
  double validation_score = 0.0;
};

struct TrainingMetrics {
  std::vector<MetricPoint> points;
  std::size_t selected_episode = 0;
  double selected_score = 0.0;
};

struct TrainingResult {
  // Highest validation score seen (earliest on ties).
  PolicyTable selected;
  PolicyTable final_policy;
  TrainingMetrics metrics;
};

// Quality reports of `n` completions drawn with a dedicated seed.
std::vector<QualityReport> evaluate_policy(const PolicyTable& policy, const ToyTask& task, const SamplingConfig& cfg,
                                           std::size_t n, std::uint64_t seed);

// Episodic PPO. Each batch is sampled from the current policy; every episode
// earns reward(test) - beta * KL(reference || policy) and its advantage is
// that value minus a moving baseline. The clipped surrogate is then
// maximized for several passes over the batch. The KL reference is
// `init.initial_logits`, so a stage-2 run from a stage-1 result keeps the
// original reference unless the caller freezes it first.
TrainingResult train_toy_policy(const PolicyTable& init, const ToyTask& task, const RewardFn& reward,
                                const TrainConfig& cfg, const ScoreConfig& validation = {});

}  // namespace testrl
