#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "testrl/random.hpp"

namespace testrl {

inline constexpr const char* kStopToken = "</s>";

struct SamplingConfig {
  double temperature = 0.7;
  double top_p = 1.0;
  double frequency_penalty = 0.5;
  std::size_t max_tokens = 512;

  // Throws std::invalid_argument on temperature < 0, top_p outside (0, 1],
  // or a negative penalty. temperature == 0 means greedy decoding.
  void validate() const;
};

// Tabular bigram policy. Row s holds the logits of the next token after
// token s; the stop token's row doubles as the start state, since nothing
// follows a stop. `initial_logits` is the frozen reference policy.
struct PolicyTable {
  std::vector<std::string> vocabulary;
  std::vector<std::vector<double>> logits;
  std::vector<std::vector<double>> initial_logits;

  // Uniform policy (all logits zero) over `tokens` plus the stop token,
  // which is appended when absent.
  static PolicyTable uniform(std::vector<std::string> tokens);

  std::size_t size() const { return vocabulary.size(); }
  int stop_index() const;
  int start_state() const { return stop_index(); }

  std::vector<double> row_probabilities(int state) const;
  std::vector<double> initial_row_probabilities(int state) const;
  // Copies the current logits into the frozen reference.
  void freeze();
  // Throws std::invalid_argument on ragged or mismatched tables, or a
  // missing stop token.
  void validate() const;
};

// Next-token distribution for `state`: logits / temperature minus
// penalty * count, softmaxed. `counts[a]` is how often action a has
// already been sampled in this completion. Requires temperature > 0.
std::vector<double> sampling_distribution(const std::vector<double>& row, const std::vector<int>& counts,
                                          const SamplingConfig& cfg);

// Smallest set of most probable actions whose mass reaches top_p,
// renormalized. Ties in probability are ordered by index.
std::vector<double> nucleus(const std::vector<double>& probs, double top_p);

struct SampledStep {
  int state = 0;
  int action = 0;
  // Log-probability under sampling_distribution (before the nucleus cut).
  double logprob = 0.0;
  // Counts in effect when the action was drawn.
  std::vector<int> counts;
};

struct Completion {
  std::vector<int> tokens;  // excludes the stop token
  std::vector<SampledStep> steps;
  bool stopped = false;
};

Completion sample_completion(const PolicyTable& policy, const SamplingConfig& cfg, Rng& rng);
Completion sample_completion(const PolicyTable& policy, const SamplingConfig& cfg, std::uint64_t seed);

// Mean KL(reference row || current row) over the given states at
// temperature 1.
double mean_kl_to_initial(const PolicyTable& policy, const std::vector<int>& states);
// Same over every row.
double full_kl_to_initial(const PolicyTable& policy);

}  // namespace testrl
