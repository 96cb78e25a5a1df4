#include "testrl/toy_training.hpp"

#include <cmath>
#include <stdexcept>

#include "testrl/rl_math.hpp"

namespace testrl {

ToyTask ToyTask::calculator() {
  ToyTask task;
  task.focal_method = "Add";
  task.vocabulary = {
      // plain statements
      "var calc = new Calculator();",
      "var other = new Calculator();",
      "var result = calc.Add(1, 2);",
      "calc.Add(0, 0);",
      "var text = calc.ToString();",
      "calc.Reset();",
      "int count = 0;",
      "count++;",
      "Console.WriteLine(result);",
      "var list = new List<int>();",
      "list.Clear();",
      "calc = null;",
      // comments
      "// arrange",
      "// act",
      "// assert",
      // assertions
      "Assert.AreEqual(3, result);",
      "Assert.IsNotNull(calc);",
      // conditional logic
      "if (calc == null) return;",
      "if (result > 0) { count++; }",
      "while (count < 3) count++;",
      "for (int i = 0; i < 3; i++) count++;",
      "try { calc.Reset(); } catch (Exception) { }",
      "var value = result > 0 ? 1 : 0;",
      "switch (count) { default: break; }",
      // fragments
      "}",
      "Assert",
      "else",
  };
  return task;
}

std::string ToyTask::render(const std::vector<int>& tokens, const PolicyTable& policy) const {
  std::string out = "[TestMethod]\npublic void Test" + focal_method + "()\n{\n";
  for (int t : tokens) {
    out += "    ";
    out += policy.vocabulary.at(t);
    out += '\n';
  }
  out += "}\n";
  return out;
}

RewardFn analyzer_reward(const RewardScheme& scheme, std::string focal_method) {
  scheme.validate();
  return [scheme, focal = std::move(focal_method)](const std::string& test) {
    return static_cast<double>(reward_for(analyze(test, focal), scheme));
  };
}

RewardFn model_reward(LinearRewardModel model) {
  return [m = std::move(model)](const std::string& test) { return m.predict(test); };
}

void TrainConfig::validate() const {
  sampling.validate();
  if (!(sampling.temperature > 0.0)) throw std::invalid_argument("training needs temperature > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (batch_size == 0 || ppo_epochs == 0) throw std::invalid_argument("batch_size and ppo_epochs must be positive");
  if (!(baseline_rate > 0.0 && baseline_rate <= 1.0)) throw std::invalid_argument("baseline_rate must lie in (0, 1]");
  if (eval_interval == 0 || eval_samples == 0) throw std::invalid_argument("evaluation settings must be positive");
}

std::vector<QualityReport> evaluate_policy(const PolicyTable& policy, const ToyTask& task, const SamplingConfig& cfg,
                                           std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QualityReport> reports;
  reports.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Completion c = sample_completion(policy, cfg, rng);
    reports.push_back(analyze(task.render(c.tokens, policy), task.focal_method));
  }
  return reports;
}

namespace {

struct Episode {
  Completion completion;
  double reward = 0.0;
  double kl = 0.0;
  double advantage = 0.0;
};

constexpr std::uint64_t kEvalSeedOffset = 0x9E3779B97F4A7C15ULL;

}  // namespace

TrainingResult train_toy_policy(const PolicyTable& init, const ToyTask& task, const RewardFn& reward,
                                const TrainConfig& cfg, const ScoreConfig& validation) {
  cfg.validate();
  init.validate();
  TrainingResult result;
  PolicyTable policy = init;
  const std::size_t v = policy.size();
  const double temperature = cfg.sampling.temperature;
  Rng rng(cfg.seed);
  const std::uint64_t eval_seed = cfg.seed + kEvalSeedOffset;

  bool have_best = false;
  auto checkpoint = [&](std::size_t episode, double mean_reward, double mean_kl) {
    const auto reports = evaluate_policy(policy, task, cfg.sampling, cfg.eval_samples, eval_seed);
    const CorpusStats stats = score_corpus(reports, validation);
    MetricPoint point{episode, mean_reward, mean_kl, stats.frequency, stats.quality_score};
    result.metrics.points.push_back(point);
    if (!have_best || stats.quality_score > result.metrics.selected_score) {
      have_best = true;
      result.selected = policy;
      result.metrics.selected_episode = episode;
      result.metrics.selected_score = stats.quality_score;
    }
  };
  checkpoint(0, 0.0, 0.0);

  bool baseline_ready = false;
  double baseline = 0.0;
  double interval_reward = 0.0, interval_kl = 0.0;
  std::size_t interval_count = 0;
  std::size_t episode = 0;
  std::size_t next_eval = cfg.eval_interval;

  while (episode < cfg.episodes) {
    const std::size_t n = std::min(cfg.batch_size, cfg.episodes - episode);
    std::vector<Episode> batch(n);
    for (Episode& e : batch) {
      e.completion = sample_completion(policy, cfg.sampling, rng);
      std::vector<int> states;
      for (const auto& s : e.completion.steps) states.push_back(s.state);
      e.kl = cfg.full_state_kl ? full_kl_to_initial(policy) : mean_kl_to_initial(policy, states);
      e.reward = reward(task.render(e.completion.tokens, policy));
    }
    if (!baseline_ready) {
      double sum = 0.0;
      for (const Episode& e : batch) sum += kl_penalized_reward(e.reward, e.kl, cfg.beta);
      baseline = sum / static_cast<double>(n);
      baseline_ready = true;
    }
    for (Episode& e : batch) {
      const double shaped = kl_penalized_reward(e.reward, e.kl, cfg.beta);
      e.advantage = shaped - baseline;
      baseline += cfg.baseline_rate * (shaped - baseline);
      interval_reward += e.reward;
      interval_kl += e.kl;
      ++interval_count;
    }

    for (std::size_t pass = 0; pass < cfg.ppo_epochs; ++pass) {
      std::vector<std::vector<double>> grad(v, std::vector<double>(v, 0.0));
      bool any = false;
      for (const Episode& e : batch) {
        if (e.advantage == 0.0) continue;
        for (const SampledStep& s : e.completion.steps) {
          const std::vector<double> p = sampling_distribution(policy.logits[s.state], s.counts, cfg.sampling);
          TrajectoryStep step{s.state, s.action, std::log(p[s.action]), s.logprob, e.advantage};
          const double g = clipped_surrogate_gradient(step, cfg.epsilon);
          if (g == 0.0) continue;
          any = true;
          for (std::size_t j = 0; j < v; ++j) {
            const double indicator = static_cast<int>(j) == s.action ? 1.0 : 0.0;
            grad[s.state][j] += g * (indicator - p[j]) / temperature;
          }
        }
      }
      if (!any) break;
      const double scale = cfg.learning_rate / static_cast<double>(n);
      for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) policy.logits[i][j] += scale * grad[i][j];
    }

    episode += n;
    if (episode >= next_eval || episode == cfg.episodes) {
      const double denom = interval_count ? static_cast<double>(interval_count) : 1.0;
      checkpoint(episode, interval_reward / denom, interval_kl / denom);
      interval_reward = interval_kl = 0.0;
      interval_count = 0;
      while (next_eval <= episode) next_eval += cfg.eval_interval;
    }
  }
  result.final_policy = std::move(policy);
  return result;
}

}  // namespace testrl
