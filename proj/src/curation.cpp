#include "testrl/curation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "testrl/errors.hpp"
#include "testrl/random.hpp"

namespace testrl {

bool is_golden(const QualityReport& r) {
  return r.correct_syntax && r.has_assertion && r.invokes_focal && !r.duplicate_assertion &&
         !r.conditional_or_exception;
}

std::vector<CorpusRecord> filter_golden(std::span<const CorpusRecord> records) {
  std::vector<CorpusRecord> out;
  for (const CorpusRecord& r : records)
    if (is_golden(analyze(r.test, r.focal_method))) out.push_back(r);
  return out;
}

std::vector<CorpusRecord> dedupe(std::span<const CorpusRecord> records) {
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<CorpusRecord> out;
  for (const CorpusRecord& r : records)
    if (seen.emplace(r.prompt, r.test).second) out.push_back(r);
  return out;
}

void SplitSpec::validate() const {
  const auto in_unit = [](double f) { return f > 0.0 && f < 1.0; };
  if (!in_unit(test_fraction) || !in_unit(val_fraction))
    throw std::invalid_argument("split fractions must lie in (0, 1)");
  if (test_fraction + val_fraction >= 1.0) throw std::invalid_argument("split fractions must sum below 1");
}

double SplitResult::actual_fraction(const std::string& split) const {
  if (total_records == 0) return 0.0;
  for (const auto& s : splits)
    if (s.name == split) return static_cast<double>(s.records) / static_cast<double>(total_records);
  return 0.0;
}

SplitResult split_by_repository(std::span<const CorpusRecord> records, const SplitSpec& spec) {
  spec.validate();
  SplitResult result;
  const double train = 1.0 - spec.test_fraction - spec.val_fraction;
  if (spec.rl_three_way) {
    result.splits = {{"sft", train / 3, 0, {}},
                     {"rm", train / 3, 0, {}},
                     {"pm", train / 3, 0, {}},
                     {"val", spec.val_fraction, 0, {}},
                     {"test", spec.test_fraction, 0, {}}};
  } else {
    result.splits = {{"train", train, 0, {}}, {"val", spec.val_fraction, 0, {}}, {"test", spec.test_fraction, 0, {}}};
  }

  std::map<std::string, std::size_t> sizes;
  for (const CorpusRecord& r : records) ++sizes[r.repo];
  if (sizes.size() < result.splits.size()) throw TooFewRepos(sizes.size(), result.splits.size());

  std::vector<std::pair<std::string, std::size_t>> repos(sizes.begin(), sizes.end());
  Rng rng(spec.seed);
  shuffle_in_place(repos, rng);
  std::stable_sort(repos.begin(), repos.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  const double total = static_cast<double>(records.size());
  result.total_records = records.size();
  auto assign = [&](std::size_t split, const std::pair<std::string, std::size_t>& repo) {
    result.splits[split].records += repo.second;
    result.splits[split].repos.push_back(repo.first);
    result.repo_to_split[repo.first] = result.splits[split].name;
  };

  // Seed every split with one of the smallest repositories, smallest
  // targets first, so that no split ends up empty.
  std::vector<std::size_t> by_target(result.splits.size());
  for (std::size_t i = 0; i < by_target.size(); ++i) by_target[i] = i;
  std::stable_sort(by_target.begin(), by_target.end(), [&](std::size_t a, std::size_t b) {
    return result.splits[a].target_fraction < result.splits[b].target_fraction;
  });
  const std::size_t reserved = by_target.size();
  for (std::size_t j = 0; j < reserved; ++j) assign(by_target[j], repos[repos.size() - 1 - j]);

  for (std::size_t i = 0; i + reserved < repos.size(); ++i) {
    std::size_t best = 0;
    double best_deficit = -1e300;
    for (std::size_t s = 0; s < result.splits.size(); ++s) {
      const double deficit = result.splits[s].target_fraction * total - static_cast<double>(result.splits[s].records);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = s;
      }
    }
    assign(best, repos[i]);
  }

  for (const auto& s : result.splits) result.records[s.name];
  for (const CorpusRecord& r : records) result.records[result.repo_to_split.at(r.repo)].push_back(r);
  return result;
}

std::vector<CorpusRecord> subsample(std::span<const CorpusRecord> records, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusRecord> out;
  for (std::size_t i : sample_indices(records.size(), n, rng)) out.push_back(records[i]);
  return out;
}

}  // namespace testrl
