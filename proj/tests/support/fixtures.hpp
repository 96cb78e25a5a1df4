#pragma once

#include <string>
#include <vector>

#include "testrl/quality.hpp"

namespace testrl::testing {

struct LabeledCase {
  std::string name;
  std::string focal;
  std::string source;
  QualityReport expected;
};

std::string fixture_path(const std::string& relative);
std::string read_file(const std::string& path);

// Parses tests/fixtures/labeled_tests.txt.
std::vector<LabeledCase> load_labeled_cases();

}  // namespace testrl::testing
