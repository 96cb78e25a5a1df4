#include "testrl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "testrl/rl_math.hpp"

namespace testrl {

void SamplingConfig::validate() const {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw std::invalid_argument("top_p must lie in (0, 1]");
  if (!(frequency_penalty >= 0.0)) throw std::invalid_argument("frequency_penalty must be non-negative");
}

PolicyTable PolicyTable::uniform(std::vector<std::string> tokens) {
  if (std::find(tokens.begin(), tokens.end(), kStopToken) == tokens.end()) tokens.emplace_back(kStopToken);
  PolicyTable p;
  p.vocabulary = std::move(tokens);
  p.logits.assign(p.size(), std::vector<double>(p.size(), 0.0));
  p.initial_logits = p.logits;
  return p;
}

int PolicyTable::stop_index() const {
  const auto it = std::find(vocabulary.begin(), vocabulary.end(), kStopToken);
  if (it == vocabulary.end()) throw std::invalid_argument("policy has no stop token");
  return static_cast<int>(it - vocabulary.begin());
}

std::vector<double> PolicyTable::row_probabilities(int state) const { return softmax(logits.at(state)); }

std::vector<double> PolicyTable::initial_row_probabilities(int state) const {
  return softmax(initial_logits.at(state));
}

void PolicyTable::freeze() { initial_logits = logits; }

void PolicyTable::validate() const {
  if (vocabulary.empty()) throw std::invalid_argument("empty vocabulary");
  if (std::set<std::string>(vocabulary.begin(), vocabulary.end()).size() != vocabulary.size())
    throw std::invalid_argument("vocabulary has duplicate tokens");
  stop_index();
  const auto square = [&](const std::vector<std::vector<double>>& m) {
    if (m.size() != size()) return false;
    for (const auto& row : m) {
      if (row.size() != size()) return false;
      for (double x : row)
        if (!std::isfinite(x)) return false;
    }
    return true;
  };
  if (!square(logits) || !square(initial_logits))
    throw std::invalid_argument("logit tables must be finite and vocabulary x vocabulary");
}

std::vector<double> sampling_distribution(const std::vector<double>& row, const std::vector<int>& counts,
                                          const SamplingConfig& cfg) {
  std::vector<double> adjusted(row.size());
  for (std::size_t a = 0; a < row.size(); ++a)
    adjusted[a] = row[a] / cfg.temperature - cfg.frequency_penalty * static_cast<double>(counts[a]);
  return softmax(adjusted);
}

std::vector<double> nucleus(const std::vector<double>& probs, double top_p) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  std::vector<double> out(probs.size(), 0.0);
  double mass = 0.0;
  for (std::size_t a : order) {
    out[a] = probs[a];
    mass += probs[a];
    if (mass >= top_p) break;
  }
  for (double& x : out) x /= mass;
  return out;
}

namespace {

int draw(const std::vector<double>& probs, Rng& rng) {
  const double u = uniform_unit(rng);
  double acc = 0.0;
  int last = 0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] <= 0.0) continue;
    acc += probs[a];
    last = static_cast<int>(a);
    if (u < acc) return last;
  }
  return last;  // rounding left u above the summed mass
}

int argmax(const std::vector<double>& row, const std::vector<int>& counts, double penalty) {
  // Greedy limit of row / T - penalty * count as T -> 0: the logits decide,
  // the penalty only breaks exact ties, then the lower index wins.
  int best = 0;
  for (std::size_t a = 1; a < row.size(); ++a) {
    const bool higher = row[a] > row[best];
    const bool tie_less_used = row[a] == row[best] && penalty > 0.0 && counts[a] < counts[best];
    if (higher || tie_less_used) best = static_cast<int>(a);
  }
  return best;
}

}  // namespace

Completion sample_completion(const PolicyTable& policy, const SamplingConfig& cfg, Rng& rng) {
  Completion out;
  const int stop = policy.stop_index();
  int state = policy.start_state();
  std::vector<int> counts(policy.size(), 0);
  for (std::size_t t = 0; t < cfg.max_tokens; ++t) {
    const auto& row = policy.logits[state];
    SampledStep step;
    step.state = state;
    step.counts = counts;
    if (cfg.temperature == 0.0) {
      step.action = argmax(row, counts, cfg.frequency_penalty);
      step.logprob = 0.0;
    } else {
      const std::vector<double> probs = sampling_distribution(row, counts, cfg);
      step.action = draw(cfg.top_p < 1.0 ? nucleus(probs, cfg.top_p) : probs, rng);
      step.logprob = std::log(probs[step.action]);
    }
    out.steps.push_back(std::move(step));
    const int action = out.steps.back().action;
    if (action == stop) {
      out.stopped = true;
      break;
    }
    out.tokens.push_back(action);
    ++counts[action];
    state = action;
  }
  return out;
}

Completion sample_completion(const PolicyTable& policy, const SamplingConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return sample_completion(policy, cfg, rng);
}

double mean_kl_to_initial(const PolicyTable& policy, const std::vector<int>& states) {
  if (states.empty()) return 0.0;
  double sum = 0.0;
  for (int s : states) sum += kl_divergence(policy.initial_row_probabilities(s), policy.row_probabilities(s));
  return sum / static_cast<double>(states.size());
}

double full_kl_to_initial(const PolicyTable& policy) {
  std::vector<int> states(policy.size());
  std::iota(states.begin(), states.end(), 0);
  return mean_kl_to_initial(policy, states);
}

}  // namespace testrl
