#include <doctest.h>

#include "testrl/completion.hpp"
#include "testrl/prompt.hpp"
#include "testrl/quality.hpp"

using namespace testrl;

namespace {

const std::string kHint = "[TestMethod]\npublic void TestStop";

const std::string kBody =
    "()\n{\n    var command = new BenchmarkCommand();\n    command.Stop().Wait();\n"
    "    Assert.IsTrue(command.IsStopped());\n}";

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("only the first test survives") {
  const RawCompletion raw{kHint, kBody +
                                     "\n\nsrc/Commands/TestBenchmarkCommand.cs:\n[TestMethod]\npublic void TestStart()\n"
                                     "{\n    // More generated text...\n}\n"};
  const std::string test = truncate_completion(raw);
  CHECK(test == kHint + kBody);
  CHECK(count(test, "[TestMethod]") == 1);
  const auto report = analyze(test, "Stop");
  CHECK(report.correct_syntax);
  CHECK(report.has_assertion);
  CHECK(report.invokes_focal);
}

TEST_CASE("truncation is idempotent, with or without the hint") {
  const RawCompletion raw{kHint, kBody + "\n[TestMethod]\npublic void TestX() { }\n"};
  const std::string once = truncate_completion(raw);
  CHECK(truncate_completion({"", once}) == once);
  CHECK(truncate_completion({once, ""}) == once);
}

TEST_CASE("indented closing braces do not cut") {
  const RawCompletion raw{kHint, "()\n{\n    if (x)\n    {\n        Assert.Fail();\n    }\n}\ntrailing"};
  const std::string test = truncate_completion(raw);
  CHECK(test.ends_with("    }\n}"));
  CHECK(test.find("trailing") == std::string::npos);
}

TEST_CASE("braces and attributes inside strings or comments do not cut") {
  const RawCompletion raw{kHint, "()\n{\n    var s = @\"\n}\";\n    // [TestMethod]\n    Assert.AreEqual(\"}\", s);\n}\nx"};
  const std::string test = truncate_completion(raw);
  CHECK(test == kHint + "()\n{\n    var s = @\"\n}\";\n    // [TestMethod]\n    Assert.AreEqual(\"}\", s);\n}");
}

TEST_CASE("a second attribute without a column-0 brace cuts before it") {
  const RawCompletion raw{kHint, "() { Assert.IsTrue(true); }\n    [ TestMethod ]\n    public void TestB() { }"};
  CHECK(truncate_completion(raw) == kHint + "() { Assert.IsTrue(true); }\n    ");
}

TEST_CASE("no boundary keeps everything") {
  const RawCompletion raw{kHint, "()\n{\n    command.Sto"};
  CHECK(truncate_completion(raw) == kHint + raw.completion_text);
  CHECK(truncate_completion({"", ""}).empty());
}

TEST_CASE("the hint itself never triggers a cut") {
  const RawCompletion raw{"[TestMethod]\n}\n[TestMethod]\npublic void TestStop", "() { }\n}\n"};
  const std::string test = truncate_completion(raw);
  CHECK(test.starts_with(raw.prompt_hint));
  CHECK(test == raw.prompt_hint + "() { }\n}");
}

TEST_CASE("output is always a prefix of hint + completion") {
  const std::vector<std::string> pieces = {"()", "{", "}", "\n", "\n}", "[TestMethod]", "\"}\"", "// }", " x;"};
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (std::size_t b = 0; b < pieces.size(); ++b)
      for (std::size_t c = 0; c < pieces.size(); ++c) {
        const RawCompletion raw{kHint, pieces[a] + pieces[b] + pieces[c]};
        const std::string out = truncate_completion(raw);
        CHECK((raw.prompt_hint + raw.completion_text).starts_with(out));
        CHECK(out.starts_with(raw.prompt_hint));
        CHECK(truncate_completion({"", out}) == out);
      }
}

TEST_CASE("assemble_record carries metadata and the truncated test") {
  const RawCompletion raw{kHint, kBody + "\n[TestMethod]\n"};
  const auto rec = assemble_record("prompt text", raw, {"repo-a", "BenchmarkCommand", "Stop"});
  CHECK(rec.repo == "repo-a");
  CHECK(rec.focal_class == "BenchmarkCommand");
  CHECK(rec.focal_method == "Stop");
  CHECK(rec.prompt == "prompt text");
  CHECK(rec.test == kHint + kBody);
  CHECK(rec.source == RecordSource::generated);
  CHECK(assemble_record("prompt text", raw, {"repo-a", "BenchmarkCommand", "Stop"}) == rec);
}

TEST_CASE("hint matches the prompt builder") { CHECK(prompt_hint("Stop") == kHint); }
