#include <doctest.h>

#include <cmath>

#include "testrl/toy_training.hpp"

using namespace testrl;

namespace {

TrainConfig quick() {
  TrainConfig cfg;
  cfg.episodes = 160;
  cfg.sampling.max_tokens = 8;
  cfg.eval_interval = 80;
  cfg.eval_samples = 30;
  return cfg;
}

double max_abs_diff(const PolicyTable& a, const PolicyTable& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a.logits[i][j] - b.logits[i][j]));
  return d;
}

}  // namespace

TEST_CASE("calculator task") {
  const ToyTask task = ToyTask::calculator();
  CHECK(task.vocabulary.size() <= 200);
  const PolicyTable policy = PolicyTable::uniform(task.vocabulary);
  const std::string empty = task.render({}, policy);
  CHECK(empty == "[TestMethod]\npublic void TestAdd()\n{\n}\n");
  const auto assertion = std::find(task.vocabulary.begin(), task.vocabulary.end(), "Assert.AreEqual(3, result);");
  REQUIRE(assertion != task.vocabulary.end());
  const int idx = static_cast<int>(assertion - task.vocabulary.begin());
  const auto report = analyze(task.render({idx}, policy), task.focal_method);
  CHECK(report.correct_syntax);
  CHECK(report.has_assertion);
  for (const auto& token : task.vocabulary) {
    const bool fragment = token == "}" || token == "Assert" || token == "else";
    const auto r = analyze(task.render({static_cast<int>(&token - task.vocabulary.data())}, policy), "Add");
    CHECK_MESSAGE(r.correct_syntax == !fragment, token);
  }
}

TEST_CASE("analyzer reward") {
  const RewardFn fn = analyzer_reward({{Property::has_assertion}, Strategy::individual}, "Add");
  CHECK(fn("[TestMethod]\npublic void TestAdd()\n{\n    Assert.IsTrue(true);\n}\n") == 1.0);
  CHECK(fn("[TestMethod]\npublic void TestAdd()\n{\n}\n") == 0.0);
  CHECK(fn("[TestMethod]\npublic void TestAdd()\n{\n") == -1.0);
  CHECK_THROWS_AS(analyzer_reward({{}, Strategy::combined}, "Add"), std::invalid_argument);
}

TEST_CASE("zero reward leaves the policy unchanged") {
  const ToyTask task = ToyTask::calculator();
  const PolicyTable init = PolicyTable::uniform(task.vocabulary);
  const auto result = train_toy_policy(init, task, [](const std::string&) { return 0.0; }, quick());
  CHECK(max_abs_diff(result.final_policy, init) < 1e-12);
}

TEST_CASE("training is deterministic and keeps valid rows") {
  const ToyTask task = ToyTask::calculator();
  const PolicyTable init = PolicyTable::uniform(task.vocabulary);
  const RewardFn fn = analyzer_reward({{Property::has_assertion}, Strategy::individual}, task.focal_method);
  const auto a = train_toy_policy(init, task, fn, quick());
  const auto b = train_toy_policy(init, task, fn, quick());
  CHECK(a.final_policy.logits == b.final_policy.logits);
  CHECK(max_abs_diff(a.final_policy, init) > 0.0);
  CHECK_NOTHROW(a.final_policy.validate());
  for (std::size_t s = 0; s < a.final_policy.size(); ++s) {
    const auto row = a.final_policy.row_probabilities(static_cast<int>(s));
    double sum = 0.0;
    for (double p : row) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
  CHECK(a.final_policy.initial_logits == init.logits);
}

TEST_CASE("metrics and checkpoint selection") {
  const ToyTask task = ToyTask::calculator();
  const PolicyTable init = PolicyTable::uniform(task.vocabulary);
  const RewardFn fn = analyzer_reward({{Property::has_assertion}, Strategy::individual}, task.focal_method);
  const auto r = train_toy_policy(init, task, fn, quick());
  std::vector<std::size_t> episodes;
  for (const auto& p : r.metrics.points) episodes.push_back(p.episode);
  CHECK(episodes == std::vector<std::size_t>{0, 80, 160});
  double best = -1e9;
  for (const auto& p : r.metrics.points) best = std::max(best, p.validation_score);
  CHECK(r.metrics.selected_score == best);
  const auto it = std::find_if(r.metrics.points.begin(), r.metrics.points.end(),
                               [&](const MetricPoint& p) { return p.validation_score == best; });
  CHECK(r.metrics.selected_episode == it->episode);
}

TEST_CASE("a heavy KL penalty keeps the policy closer to the reference") {
  const ToyTask task = ToyTask::calculator();
  const PolicyTable init = PolicyTable::uniform(task.vocabulary);
  const RewardFn fn = analyzer_reward({{Property::has_assertion}, Strategy::individual}, task.focal_method);
  TrainConfig cfg = quick();
  cfg.episodes = 600;
  cfg.eval_interval = 600;
  cfg.beta = 0.0;
  const double free_kl = full_kl_to_initial(train_toy_policy(init, task, fn, cfg).final_policy);
  cfg.beta = 100.0;
  const double tied_kl = full_kl_to_initial(train_toy_policy(init, task, fn, cfg).final_policy);
  CHECK(tied_kl < free_kl);
}

TEST_CASE("train config validation") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.sampling.temperature = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
