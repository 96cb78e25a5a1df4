#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "testrl/syntax.hpp"

namespace testrl {

struct BudgetConfig {
  std::size_t prompt_token_budget = 1536;
  std::size_t completion_token_budget = 512;
  std::size_t chars_per_token = 4;
  std::size_t model_context = 2048;

  // Throws std::invalid_argument when a value is zero or the two budgets do
  // not fit the model context.
  void validate() const;
};

struct PromptRecord {
  std::string focal_path;
  std::string test_path;
  std::string focal_method;
  int context_level = 1;
  std::string prompt_text;
  std::size_t estimated_tokens = 0;
};

inline constexpr int kMinContextLevel = 1;
inline constexpr int kMaxContextLevel = 4;

// ceil(characters / chars_per_token), counting UTF-8 code points.
std::size_t estimate_tokens(std::string_view text, const BudgetConfig& cfg = {});

// "src/Commands/BenchmarkCommand.cs" -> "src/Commands/TestBenchmarkCommand.cs"
std::string test_path_for(std::string_view focal_path);

// "[TestMethod]\npublic void Test<focal>"
std::string prompt_hint(std::string_view focal_method);

// Focal context at one of four levels, each no longer than the previous:
//   1  the whole file
//   2  the focal class, other methods cut down to `signature;`
//   3  level 2 without fields and without comments outside the focal method
//   4  the class declaration around the focal method alone
// The first method named `focal` is the focal method. Throws FocalNotFound.
std::string render_level(const FocalFileTree& tree, std::string_view focal, int level);

// Tries levels 1 to 4 and returns the first prompt that fits
// cfg.prompt_token_budget. Throws PromptTooLong when level 4 does not fit.
PromptRecord build_prompt(const FocalFileTree& tree, std::string_view focal, std::string_view focal_path,
                          const BudgetConfig& cfg = {});

// The full prompt for a given context: file header, context, test file
// header, hint.
std::string assemble_prompt(std::string_view focal_path, std::string_view context, std::string_view focal);

}  // namespace testrl
