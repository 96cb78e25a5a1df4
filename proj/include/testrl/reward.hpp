#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "testrl/quality.hpp"
#include "testrl/record.hpp"

namespace testrl {

enum class Strategy { individual, combined };

enum class Polarity { positive, negative };

// Smells are rewarded for being absent, everything else for being present.
Polarity polarity_of(Property p);

struct RewardScheme {
  std::vector<Property> properties;
  Strategy strategy = Strategy::combined;

  std::size_t k() const { return properties.size(); }
  // Throws std::invalid_argument on an empty or repeated property list, on
  // correct_syntax (it gates every reward instead), or on an individual
  // scheme with more than one property.
  void validate() const;
};

struct LabeledRecord {
  CorpusRecord record;
  QualityReport report;
  int reward = 0;
};

// 1 if the property holds in the rewarded direction, else 0.
int property_score(const QualityReport& report, Property p);

int individual_reward(const QualityReport& report, const RewardScheme& scheme);
int combined_reward(const QualityReport& report, const RewardScheme& scheme);
// Dispatches on scheme.strategy.
int reward_for(const QualityReport& report, const RewardScheme& scheme);

std::vector<LabeledRecord> label_dataset(std::span<const CorpusRecord> records, const RewardScheme& scheme);

// Balances reward-model training data. With k = 1 the classes are the
// reward values 0 and 1; with k > 1 the non-negative rewards are split at
// their median into a lower class (below) and an upper class (at or above).
// With d = min(|lower|, |upper|) the output holds d of each plus
// min(2d, |broken|) records of reward -1, drawn uniformly without
// replacement and emitted in input order. Throws InsufficientData when
// either non-negative class is empty.
std::vector<LabeledRecord> resample_balanced(std::span<const LabeledRecord> labeled, std::size_t k,
                                             std::uint64_t seed);

}  // namespace testrl
