#include "testrl/reward.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "testrl/errors.hpp"
#include "testrl/random.hpp"

namespace testrl {

Polarity polarity_of(Property p) { return is_smell(p) ? Polarity::negative : Polarity::positive; }

void RewardScheme::validate() const {
  if (properties.empty()) throw std::invalid_argument("reward scheme needs at least one property");
  const std::set<Property> unique(properties.begin(), properties.end());
  if (unique.size() != properties.size()) throw std::invalid_argument("reward scheme repeats a property");
  if (unique.count(Property::correct_syntax))
    throw std::invalid_argument("correct_syntax gates every reward and cannot be rewarded on its own");
  if (strategy == Strategy::individual && properties.size() != 1)
    throw std::invalid_argument("an individual reward takes exactly one property");
}

int property_score(const QualityReport& report, Property p) {
  const bool holds = report.get(p);
  return (polarity_of(p) == Polarity::positive ? holds : !holds) ? 1 : 0;
}

int individual_reward(const QualityReport& report, const RewardScheme& scheme) {
  if (scheme.strategy != Strategy::individual || scheme.properties.size() != 1)
    throw std::invalid_argument("individual_reward needs an individual scheme with one property");
  if (!report.correct_syntax) return -1;
  return property_score(report, scheme.properties.front());
}

int combined_reward(const QualityReport& report, const RewardScheme& scheme) {
  if (!report.correct_syntax) return -1;
  int total = 0;
  for (Property p : scheme.properties) total += property_score(report, p);
  return total;
}

int reward_for(const QualityReport& report, const RewardScheme& scheme) {
  return scheme.strategy == Strategy::individual ? individual_reward(report, scheme)
                                                 : combined_reward(report, scheme);
}

std::vector<LabeledRecord> label_dataset(std::span<const CorpusRecord> records, const RewardScheme& scheme) {
  std::vector<LabeledRecord> out;
  out.reserve(records.size());
  for (const CorpusRecord& r : records) {
    LabeledRecord l;
    l.record = r;
    l.report = analyze(r.test, r.focal_method);
    l.reward = reward_for(l.report, scheme);
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<LabeledRecord> resample_balanced(std::span<const LabeledRecord> labeled, std::size_t k,
                                             std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::size_t> lower, upper, broken;
  std::vector<int> positive_rewards;
  for (const auto& l : labeled)
    if (l.reward >= 0) positive_rewards.push_back(l.reward);

  int threshold = 1;
  if (k > 1 && !positive_rewards.empty()) {
    std::sort(positive_rewards.begin(), positive_rewards.end());
    const std::size_t n = positive_rewards.size();
    // Upper median, so the upper class is never empty when rewards differ.
    threshold = positive_rewards[n / 2];
    if (threshold == positive_rewards.front()) {
      const auto above = std::upper_bound(positive_rewards.begin(), positive_rewards.end(), threshold);
      if (above != positive_rewards.end()) threshold = *above;
    }
  }
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    const int r = labeled[i].reward;
    if (r < 0) broken.push_back(i);
    else if (r < threshold) lower.push_back(i);
    else upper.push_back(i);
  }
  if (lower.empty() || upper.empty())
    throw InsufficientData("resampling needs both a low-reward and a high-reward class (got " +
                           std::to_string(lower.size()) + " and " + std::to_string(upper.size()) + ")");

  const std::size_t d = std::min(lower.size(), upper.size());
  Rng rng(seed);
  std::vector<std::size_t> keep;
  for (const auto* cls : {&lower, &upper, &broken}) {
    const std::size_t want = cls == &broken ? std::min(2 * d, broken.size()) : d;
    for (std::size_t j : sample_indices(cls->size(), want, rng)) keep.push_back((*cls)[j]);
  }
  std::sort(keep.begin(), keep.end());
  std::vector<LabeledRecord> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(labeled[i]);
  return out;
}

}  // namespace testrl
