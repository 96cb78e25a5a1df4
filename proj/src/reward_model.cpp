#include "testrl/reward_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "testrl/errors.hpp"
#include "testrl/lexer.hpp"
#include "testrl/random.hpp"
#include "testrl/rl_math.hpp"

namespace testrl {

namespace {

std::vector<std::string> significant_texts(std::string_view test) {
  std::vector<std::string> out;
  for (Token& t : tokenize(test))
    if (!t.is_trivia()) out.push_back(std::move(t.text));
  return out;
}

}  // namespace

std::vector<double> LinearRewardModel::featurize(std::string_view test) const {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < features.size(); ++i) index.emplace(features[i], i);
  std::vector<double> x(features.size(), 0.0);
  for (const std::string& t : significant_texts(test))
    if (auto it = index.find(t); it != index.end()) x[it->second] += 1.0;
  return x;
}

double LinearRewardModel::predict_features(std::span<const double> x) const {
  double y = bias;
  for (std::size_t i = 0; i < x.size() && i < weights.size(); ++i) y += weights[i] * x[i];
  return y;
}

double LinearRewardModel::predict(std::string_view test) const { return predict_features(featurize(test)); }

RewardModelFit train_reward_model(std::span<const LabeledRecord> labeled, const RewardModelConfig& cfg) {
  if (labeled.empty()) throw InsufficientData("no labeled records");
  const bool single_class = std::all_of(labeled.begin(), labeled.end(),
                                        [&](const LabeledRecord& l) { return l.reward == labeled.front().reward; });
  if (single_class) throw InsufficientData("every record has the same reward");

  // Feature vocabulary: most frequent token texts, ties alphabetical.
  std::map<std::string, std::size_t> freq;
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(labeled.size());
  for (const auto& l : labeled) {
    tokens.push_back(significant_texts(l.record.test));
    for (const auto& t : tokens.back()) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > cfg.max_features) ranked.resize(cfg.max_features);

  RewardModelFit fit;
  for (auto& [text, count] : ranked) fit.model.features.push_back(text);
  std::sort(fit.model.features.begin(), fit.model.features.end());
  fit.model.weights.assign(fit.model.features.size(), 0.0);

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (const auto& l : labeled) {
    x.push_back(fit.model.featurize(l.record.test));
    y.push_back(static_cast<double>(l.reward));
  }

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(labeled.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle_in_place(order, rng);
  std::size_t holdout = static_cast<std::size_t>(std::floor(cfg.holdout_fraction * static_cast<double>(order.size())));
  if (order.size() >= 2) holdout = std::clamp<std::size_t>(holdout, 1, order.size() - 1);
  else holdout = 0;
  const std::vector<std::size_t> val(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(holdout));
  const std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(holdout), order.end());

  const auto loss_on = [&](const LinearRewardModel& m, const std::vector<std::size_t>& rows) {
    if (rows.empty()) return 0.0;
    std::vector<double> pred, target;
    for (std::size_t i : rows) {
      pred.push_back(m.predict_features(x[i]));
      target.push_back(y[i]);
    }
    return mse_loss(pred, target);
  };

  // Gradient descent runs on standardized features so one learning rate
  // suits any token-count scale; the step is also capped at 1 / L, L being the
  // largest curvature of the training loss, which keeps every step a descent.
  const std::size_t d = fit.model.features.size();
  std::vector<double> mean(d, 0.0), scale(d, 0.0);
  for (std::size_t i : train)
    for (std::size_t f = 0; f < d; ++f) mean[f] += x[i][f];
  for (double& m : mean) m /= static_cast<double>(train.size());
  for (std::size_t i : train)
    for (std::size_t f = 0; f < d; ++f) scale[f] += (x[i][f] - mean[f]) * (x[i][f] - mean[f]);
  for (double& sd : scale) sd = std::sqrt(sd / static_cast<double>(train.size()));
  std::vector<std::vector<double>> z;
  z.reserve(train.size());
  for (std::size_t i : train) {
    std::vector<double> row(d + 1, 1.0);  // last column is the intercept
    for (std::size_t f = 0; f < d; ++f) row[f] = scale[f] > 0.0 ? (x[i][f] - mean[f]) / scale[f] : 0.0;
    z.push_back(std::move(row));
  }

  // Power iteration for the top eigenvalue of (2 / n) Z^T Z.
  double curvature = 0.0;
  {
    std::vector<double> v(d + 1, 1.0 / std::sqrt(static_cast<double>(d + 1)));
    for (int it = 0; it < 50; ++it) {
      std::vector<double> w(d + 1, 0.0);
      for (const auto& row : z) {
        double dot = 0.0;
        for (std::size_t f = 0; f <= d; ++f) dot += row[f] * v[f];
        for (std::size_t f = 0; f <= d; ++f) w[f] += row[f] * dot;
      }
      double norm = 0.0;
      for (double& wf : w) {
        wf *= 2.0 / static_cast<double>(z.size());
        norm += wf * wf;
      }
      norm = std::sqrt(norm);
      curvature = norm;
      if (norm == 0.0) break;
      for (std::size_t f = 0; f <= d; ++f) v[f] = w[f] / norm;
    }
  }
  const double step = curvature > 0.0 ? std::min(cfg.learning_rate, 1.0 / curvature) : cfg.learning_rate;

  std::vector<double> theta(d + 1, 0.0);
  const auto to_model = [&] {
    LinearRewardModel m = fit.model;
    m.bias = theta[d];
    for (std::size_t f = 0; f < d; ++f) {
      m.weights[f] = scale[f] > 0.0 ? theta[f] / scale[f] : 0.0;
      m.bias -= m.weights[f] * mean[f];
    }
    return m;
  };

  LinearRewardModel best = fit.model;
  double best_val = loss_on(best, val.empty() ? train : val);
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<double> pred, target;
    for (std::size_t r = 0; r < train.size(); ++r) {
      double p = 0.0;
      for (std::size_t f = 0; f <= d; ++f) p += theta[f] * z[r][f];
      pred.push_back(p);
      target.push_back(y[train[r]]);
    }
    const std::vector<double> g = mse_gradient(pred, target);
    std::vector<double> grad(d + 1, 0.0);
    for (std::size_t r = 0; r < train.size(); ++r)
      for (std::size_t f = 0; f <= d; ++f)
        if (z[r][f] != 0.0) grad[f] += g[r] * z[r][f];
    for (std::size_t f = 0; f <= d; ++f) theta[f] -= step * grad[f];
    fit.model = to_model();

    fit.train_loss.push_back(loss_on(fit.model, train));
    const double v = loss_on(fit.model, val.empty() ? train : val);
    fit.validation_loss.push_back(v);
    if (v < best_val) {
      best_val = v;
      best = fit.model;
      fit.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  fit.model = std::move(best);
  return fit;
}

}  // namespace testrl
