#include "testrl/quality.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "testrl/errors.hpp"

namespace testrl {

namespace {

struct PropertyInfo {
  Property property;
  std::string_view name;
  std::string_view alias;
  std::string_view display;
};

constexpr std::array<PropertyInfo, 7> kInfo = {{
    {Property::correct_syntax, "correct_syntax", "syntax", "Correct Syntax"},
    {Property::has_assertion, "has_assertion", "assertion", "Contains Assertion"},
    {Property::invokes_focal, "invokes_focal", "focal", "Invokes Focal Method"},
    {Property::has_comment, "has_comment", "comment", "Includes Comment"},
    {Property::descriptive_name, "descriptive_name", "descriptive", "Has Descriptive Name"},
    {Property::duplicate_assertion, "duplicate_assertion", "dup", "Contains Duplicate Assertion"},
    {Property::conditional_or_exception, "conditional_or_exception", "cond", "Contains Conditional/Exception"},
}};

void visit(const std::vector<Statement>& list, const std::function<void(const Statement&)>& fn) {
  for (const Statement& s : list) {
    fn(s);
    visit(s.children, fn);
  }
}

bool any_statement(const TestSyntaxTree& tree, const std::function<bool(const Statement&)>& pred) {
  bool found = false;
  visit(tree.statements(), [&](const Statement& s) { found = found || pred(s); });
  return found;
}

// `sequence` is true for the statements of a block (or the method body);
// the children of other statements are independent branches.
bool has_adjacent_duplicate(const std::vector<Statement>& list, bool sequence) {
  if (sequence) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (is_assertion_statement(list[i - 1]) && is_assertion_statement(list[i]) &&
          list[i - 1].normalized == list[i].normalized)
        return true;
    }
  }
  for (const Statement& s : list)
    if (has_adjacent_duplicate(s.children, s.kind == StatementKind::block)) return true;
  return false;
}

}  // namespace

std::string_view to_string(Property p) { return kInfo[static_cast<std::size_t>(p)].name; }

std::string_view display_name(Property p) { return kInfo[static_cast<std::size_t>(p)].display; }

std::optional<Property> property_from_string(std::string_view name) {
  for (const auto& info : kInfo)
    if (info.name == name || info.alias == name) return info.property;
  if (name == "descriptive_name" || name == "conditional" || name == "duplicate") {
    return name == "conditional" ? Property::conditional_or_exception : Property::duplicate_assertion;
  }
  return std::nullopt;
}

bool is_smell(Property p) { return p == Property::duplicate_assertion || p == Property::conditional_or_exception; }

bool QualityReport::get(Property p) const {
  switch (p) {
    case Property::correct_syntax: return correct_syntax;
    case Property::has_assertion: return has_assertion;
    case Property::invokes_focal: return invokes_focal;
    case Property::has_comment: return has_comment;
    case Property::descriptive_name: return descriptive_name;
    case Property::duplicate_assertion: return duplicate_assertion;
    case Property::conditional_or_exception: return conditional_or_exception;
  }
  return false;
}

void QualityReport::set(Property p, bool value) {
  switch (p) {
    case Property::correct_syntax: correct_syntax = value; break;
    case Property::has_assertion: has_assertion = value; break;
    case Property::invokes_focal: invokes_focal = value; break;
    case Property::has_comment: has_comment = value; break;
    case Property::descriptive_name: descriptive_name = value; break;
    case Property::duplicate_assertion: duplicate_assertion = value; break;
    case Property::conditional_or_exception: conditional_or_exception = value; break;
  }
}

bool is_assertion_call(const Invocation& call) {
  const auto is_class = [](const std::string& s) {
    return std::find(kAssertionClasses.begin(), kAssertionClasses.end(), s) != kAssertionClasses.end();
  };
  const auto& c = call.callee;
  if (c.size() < 2) return false;
  // Leading class (`Assert.IsTrue`) or fully qualified (`...UnitTesting.Assert.IsTrue`).
  return is_class(c.front()) || is_class(c[c.size() - 2]);
}

bool is_assertion_statement(const Statement& s) {
  if (s.kind != StatementKind::expression) return false;
  return std::any_of(s.invocations.begin(), s.invocations.end(),
                     [](const Invocation& call) { return call.depth == 0 && is_assertion_call(call); });
}

bool detect_assertion(const TestSyntaxTree& tree) {
  return any_statement(tree, [](const Statement& s) {
    return std::any_of(s.invocations.begin(), s.invocations.end(), is_assertion_call);
  });
}

bool detect_focal_call(const TestSyntaxTree& tree, std::string_view focal_name) {
  if (focal_name.empty()) return false;
  return any_statement(tree, [&](const Statement& s) {
    return std::any_of(s.invocations.begin(), s.invocations.end(),
                       [&](const Invocation& call) { return call.name() == focal_name; });
  });
}

bool detect_comment(const TestSyntaxTree& tree) { return !tree.comments.empty(); }

bool is_descriptive_name(std::string_view method_name, std::string_view focal_name) {
  std::string rest(method_name);
  if (rest.starts_with("Test")) rest.erase(0, 4);
  if (!focal_name.empty()) {
    if (const auto pos = rest.find(focal_name); pos != std::string::npos) rest.erase(pos, focal_name.size());
  }
  const auto alnum = std::count_if(rest.begin(), rest.end(),
                                   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
  return alnum >= 3;
}

bool detect_descriptive_name(const TestSyntaxTree& tree, std::string_view focal_name) {
  return is_descriptive_name(tree.method_name, focal_name);
}

bool detect_duplicate_assertion(const TestSyntaxTree& tree) {
  return has_adjacent_duplicate(tree.statements(), true);
}

bool detect_conditional_or_exception(const TestSyntaxTree& tree) {
  return any_statement(tree, [](const Statement& s) {
    switch (s.kind) {
      case StatementKind::if_statement:
      case StatementKind::switch_statement:
      case StatementKind::while_statement:
      case StatementKind::do_statement:
      case StatementKind::for_statement:
      case StatementKind::foreach_statement:
      case StatementKind::try_statement:
        return true;
      default:
        return s.has_ternary || s.has_switch_expression;
    }
  });
}

QualityReport analyze(std::string_view raw_test, std::string_view focal_name) {
  const TestSyntaxTree tree = parse_test_method(raw_test);
  QualityReport r;
  r.correct_syntax = check_syntax(raw_test).correct;
  r.has_assertion = detect_assertion(tree);
  r.invokes_focal = detect_focal_call(tree, focal_name);
  r.has_comment = detect_comment(tree);
  r.descriptive_name = detect_descriptive_name(tree, focal_name);
  r.duplicate_assertion = detect_duplicate_assertion(tree);
  r.conditional_or_exception = detect_conditional_or_exception(tree);
  r.focal_method_name = std::string(focal_name);
  r.low_confidence = !r.correct_syntax;
  return r;
}

CorpusStats score_corpus(std::span<const QualityReport> reports, const ScoreConfig& config) {
  if (reports.empty()) throw EmptyCorpus();
  CorpusStats stats;
  stats.count = reports.size();
  for (Property p : kAllProperties) {
    const auto hits = std::count_if(reports.begin(), reports.end(), [&](const QualityReport& r) { return r.get(p); });
    stats.frequency[p] = static_cast<double>(hits) / static_cast<double>(reports.size());
  }
  for (Property p : config.positive) stats.quality_score += stats.frequency[p];
  for (Property p : config.smells) stats.quality_score -= stats.frequency[p];
  return stats;
}

}  // namespace testrl
