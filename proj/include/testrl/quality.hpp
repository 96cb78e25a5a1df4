#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testrl/syntax.hpp"

namespace testrl {

enum class Property {
  correct_syntax,
  has_assertion,
  invokes_focal,
  has_comment,
  descriptive_name,
  duplicate_assertion,
  conditional_or_exception,
};

inline constexpr std::array<Property, 7> kAllProperties = {
    Property::correct_syntax,   Property::has_assertion,       Property::invokes_focal,
    Property::has_comment,      Property::descriptive_name,    Property::duplicate_assertion,
    Property::conditional_or_exception,
};

// Canonical field name, e.g. "has_assertion".
std::string_view to_string(Property p);
// Accepts the canonical names plus short aliases (assertion, focal, comment,
// descriptive, dup, cond, syntax).
std::optional<Property> property_from_string(std::string_view name);
// Row label used in frequency tables.
std::string_view display_name(Property p);
bool is_smell(Property p);

struct QualityReport {
  bool correct_syntax = false;
  bool has_assertion = false;
  bool invokes_focal = false;
  bool has_comment = false;
  bool descriptive_name = false;
  bool duplicate_assertion = false;
  bool conditional_or_exception = false;
  std::string focal_method_name;
  // Set when the structural properties come from a recovered parse.
  bool low_confidence = false;

  bool get(Property p) const;
  void set(Property p, bool value);
  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

// MSTest assertion classes.
inline constexpr std::array<std::string_view, 3> kAssertionClasses = {"Assert", "StringAssert", "CollectionAssert"};

bool is_assertion_call(const Invocation& call);
// An expression statement whose outermost call is an assertion.
bool is_assertion_statement(const Statement& s);

bool detect_assertion(const TestSyntaxTree& tree);
bool detect_focal_call(const TestSyntaxTree& tree, std::string_view focal_name);
bool detect_comment(const TestSyntaxTree& tree);
bool detect_descriptive_name(const TestSyntaxTree& tree, std::string_view focal_name);
bool detect_duplicate_assertion(const TestSyntaxTree& tree);
bool detect_conditional_or_exception(const TestSyntaxTree& tree);

// Remainder rule behind detect_descriptive_name, exposed for reuse.
bool is_descriptive_name(std::string_view method_name, std::string_view focal_name);

QualityReport analyze(std::string_view raw_test, std::string_view focal_name);

struct ScoreConfig {
  std::vector<Property> positive{Property::has_assertion, Property::invokes_focal};
  std::vector<Property> smells{Property::duplicate_assertion, Property::conditional_or_exception};
};

struct CorpusStats {
  std::size_t count = 0;
  std::map<Property, double> frequency;
  double quality_score = 0.0;
};

// Per-property frequencies and the validation quality score: summed
// frequency of the positive set minus summed frequency of the smell set.
// Throws EmptyCorpus.
CorpusStats score_corpus(std::span<const QualityReport> reports, const ScoreConfig& config = {});

}  // namespace testrl
