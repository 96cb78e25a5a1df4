#pragma once

#include <string>
#include <string_view>

#include "testrl/record.hpp"

namespace testrl {

struct RawCompletion {
  // The `[TestMethod]\npublic void Test<Focal>` stub the prompt ends with.
  std::string prompt_hint;
  std::string completion_text;
};

struct RecordMetadata {
  std::string repo;
  std::string focal_class;
  std::string focal_method;
};

// Cuts hint + completion down to one test method. The cut is at whichever
// comes first after the hint: a `}` at column 0 (kept) or the start of the
// second `[TestMethod]` attribute in hint + completion (dropped). Boundaries are found on the
// token stream, so braces inside strings and comments never count. Without
// either boundary the full concatenation is returned.
std::string truncate_completion(const RawCompletion& raw);

CorpusRecord assemble_record(std::string_view prompt, const RawCompletion& raw, const RecordMetadata& metadata);

}  // namespace testrl
