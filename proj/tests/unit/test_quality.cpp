#include <doctest.h>

#include "support/fixtures.hpp"
#include "testrl/errors.hpp"
#include "testrl/lexer.hpp"
#include "testrl/quality.hpp"

using namespace testrl;

TEST_CASE("every detector matches the hand labels") {
  const auto cases = testing::load_labeled_cases();
  CHECK(cases.size() >= 50);
  for (const auto& c : cases) {
    const QualityReport r = analyze(c.source, c.focal);
    for (Property p : kAllProperties)
      CHECK_MESSAGE(r.get(p) == c.expected.get(p), c.name << ": " << to_string(p));
    CHECK(r.low_confidence == !r.correct_syntax);
  }
}

TEST_CASE("the labeled corpus covers every property both ways") {
  const auto cases = testing::load_labeled_cases();
  for (Property p : kAllProperties) {
    const auto yes = std::count_if(cases.begin(), cases.end(), [&](const auto& c) { return c.expected.get(p); });
    CHECK_MESSAGE(yes > 0, to_string(p));
    CHECK_MESSAGE(static_cast<std::size_t>(yes) < cases.size(), to_string(p));
  }
}

TEST_CASE("figure completion report") {
  const auto r = analyze(
      "[TestMethod]\npublic void TestStop()\n{\n\tvar command = new BenchmarkCommand();\n\tcommand.Stop().Wait();\n"
      "\tAssert.IsTrue(command.IsStopped());\n}\n",
      "Stop");
  CHECK(r.correct_syntax);
  CHECK(r.has_assertion);
  CHECK(r.invokes_focal);
  CHECK_FALSE(r.has_comment);
  CHECK_FALSE(r.descriptive_name);
  CHECK_FALSE(r.duplicate_assertion);
  CHECK_FALSE(r.conditional_or_exception);
  CHECK(r.focal_method_name == "Stop");
}

TEST_CASE("duplicate assertions inside an if") {
  const auto r = analyze("void T() { if (x) { Assert.IsTrue(a); Assert.IsTrue(a); } }", "F");
  CHECK(r.duplicate_assertion);
  CHECK(r.conditional_or_exception);
}

TEST_CASE("descriptive name rule") {
  CHECK(is_descriptive_name("TestAdd_EmptyString_ReturnsZero", "Add"));
  CHECK_FALSE(is_descriptive_name("TestStop", "Stop"));
  CHECK(is_descriptive_name("TestStopWhenRunning", "Stop"));
  CHECK_FALSE(is_descriptive_name("TestStop12", "Stop"));
  CHECK(is_descriptive_name("TestStop123", "Stop"));
  CHECK_FALSE(is_descriptive_name("", "Stop"));
}

TEST_CASE("property names") {
  for (Property p : kAllProperties) CHECK(property_from_string(to_string(p)) == p);
  CHECK(property_from_string("assertion") == Property::has_assertion);
  CHECK(property_from_string("cond") == Property::conditional_or_exception);
  CHECK_FALSE(property_from_string("nonsense").has_value());
  CHECK(is_smell(Property::duplicate_assertion));
  CHECK_FALSE(is_smell(Property::has_comment));
}

TEST_CASE("score_corpus") {
  QualityReport perfect;
  perfect.correct_syntax = perfect.has_assertion = perfect.invokes_focal = true;
  SUBCASE("all positives, no smells") {
    const std::vector<QualityReport> reports(4, perfect);
    const auto stats = score_corpus(reports);
    CHECK(stats.quality_score == doctest::Approx(2.0));
    CHECK(stats.count == 4);
  }
  SUBCASE("single perfect test") {
    const auto stats = score_corpus(std::vector<QualityReport>{perfect});
    CHECK(stats.quality_score == doctest::Approx(2.0));
    CHECK(stats.frequency.at(Property::has_assertion) == 1.0);
    CHECK(stats.frequency.at(Property::invokes_focal) == 1.0);
  }
  SUBCASE("0.5 + 0.5 - 0.1 - 0") {
    std::vector<QualityReport> reports(10);
    for (int i = 0; i < 5; ++i) reports[i].has_assertion = true;
    for (int i = 5; i < 10; ++i) reports[i].invokes_focal = true;
    reports[0].duplicate_assertion = true;
    CHECK(score_corpus(reports).quality_score == doctest::Approx(0.9));
  }
  SUBCASE("configurable sets") {
    QualityReport r = perfect;
    r.has_comment = true;
    const auto stats = score_corpus(std::vector<QualityReport>{r}, ScoreConfig{{Property::has_comment}, {}});
    CHECK(stats.quality_score == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(score_corpus(std::vector<QualityReport>{}), EmptyCorpus);
}

TEST_CASE("duplicate implies assertion and wrapping the body changes nothing") {
  for (const auto& c : testing::load_labeled_cases()) {
    const auto r = analyze(c.source, c.focal);
    if (r.duplicate_assertion) CHECK(r.has_assertion);
    if (!r.correct_syntax) continue;
    const auto toks = tokenize(c.source);
    std::size_t open = std::string::npos, close = std::string::npos;
    for (const auto& t : toks) {
      if (t.kind != TokenKind::punctuation) continue;
      if (t.text == "{" && open == std::string::npos) open = t.offset;
      if (t.text == "}") close = t.offset;
    }
    if (open == std::string::npos) continue;  // expression-bodied
    std::string wrapped = c.source;
    wrapped.insert(close, " }");
    wrapped.insert(open + 1, " {");
    CHECK_MESSAGE(analyze(wrapped, c.focal) == r, c.name);
  }
}
