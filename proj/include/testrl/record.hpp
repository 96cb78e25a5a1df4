#pragma once

#include <string>

namespace testrl {

enum class RecordSource { generated, human };

// One prompt/test pair flowing through curation, labeling and reporting.
struct CorpusRecord {
  std::string repo;
  std::string focal_class;
  std::string focal_method;
  std::string prompt;
  std::string test;
  RecordSource source = RecordSource::generated;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

}  // namespace testrl
