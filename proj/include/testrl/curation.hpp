#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "testrl/quality.hpp"
#include "testrl/record.hpp"

namespace testrl {

// correct syntax, an assertion, a focal call, no duplicate assertion, no
// conditional logic.
bool is_golden(const QualityReport& report);

// Keeps records whose test passes is_golden, re-analyzing every record.
std::vector<CorpusRecord> filter_golden(std::span<const CorpusRecord> records);

// Stable first-wins deduplication on (prompt, test).
std::vector<CorpusRecord> dedupe(std::span<const CorpusRecord> records);

struct SplitSpec {
  double test_fraction = 0.05;
  double val_fraction = 0.10;
  bool rl_three_way = false;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless both fractions lie in (0, 1) and
  // sum below 1.
  void validate() const;
};

struct SplitTarget {
  std::string name;
  double target_fraction = 0.0;
  std::size_t records = 0;
  std::vector<std::string> repos;
};

struct SplitResult {
  // train, val, test; or sft, rm, pm, val, test.
  std::vector<SplitTarget> splits;
  std::map<std::string, std::vector<CorpusRecord>> records;
  std::map<std::string, std::string> repo_to_split;
  std::size_t total_records = 0;

  double actual_fraction(const std::string& split) const;
};

// Assigns whole repositories to splits. Repositories are shuffled with the
// seed, ordered by size (largest first, ties keep the shuffled order), each
// split is first given one of the smallest repositories, and the rest go
// greedily to the split furthest below its target record count. Throws
// TooFewRepos with fewer repositories than splits.
SplitResult split_by_repository(std::span<const CorpusRecord> records, const SplitSpec& spec);

// min(n, size) records drawn uniformly without replacement, in input order.
std::vector<CorpusRecord> subsample(std::span<const CorpusRecord> records, std::size_t n, std::uint64_t seed);

}  // namespace testrl
