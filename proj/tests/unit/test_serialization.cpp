#include <doctest.h>

#include "testrl/serialization.hpp"

using namespace testrl;

TEST_CASE("corpus record round trip") {
  CorpusRecord r{"repo", "Calc", "Add", "prompt\n", "[TestMethod]\npublic void TestAdd() { }", RecordSource::human};
  const json j = r;
  CHECK(j.at("schema") == kRecordSchema);
  CHECK(j.at("source") == "human");
  CHECK(j.get<CorpusRecord>() == r);
  json untagged = j;
  untagged.erase("schema");
  CHECK(untagged.get<CorpusRecord>() == r);
  json wrong = j;
  wrong["schema"] = "quality/v1";
  CHECK_THROWS_AS(wrong.get<CorpusRecord>(), json::other_error);
  json missing = j;
  missing.erase("test");
  CHECK_THROWS_AS(missing.get<CorpusRecord>(), json::out_of_range);
}

TEST_CASE("quality report round trip") {
  QualityReport q;
  q.correct_syntax = q.has_assertion = q.duplicate_assertion = true;
  q.focal_method_name = "Stop";
  const json j = q;
  for (Property p : kAllProperties) CHECK(j.contains(std::string(to_string(p))));
  CHECK(j.get<QualityReport>() == q);
}

TEST_CASE("labeled record round trip") {
  LabeledRecord l;
  l.record = {"r", "C", "M", "p", "t", RecordSource::generated};
  l.report.correct_syntax = true;
  l.reward = 1;
  const json j = l;
  CHECK(j.at("reward") == 1);
  CHECK(j.at("test") == "t");
  const auto back = j.get<LabeledRecord>();
  CHECK(back.record == l.record);
  CHECK(back.report == l.report);
  CHECK(back.reward == 1);
}

TEST_CASE("prompt, policy and model round trips") {
  PromptRecord p{"a.cs", "Testa.cs", "F", 3, "text", 1};
  const auto pb = json(p).get<PromptRecord>();
  CHECK(pb.prompt_text == "text");
  CHECK(pb.context_level == 3);
  CHECK(pb.test_path == "Testa.cs");

  PolicyTable t = PolicyTable::uniform({"a"});
  t.logits[0][1] = 0.25;
  const auto tb = json(t).get<PolicyTable>();
  CHECK(tb.vocabulary == t.vocabulary);
  CHECK(tb.logits == t.logits);
  CHECK(tb.initial_logits == t.initial_logits);

  LinearRewardModel m{{"Assert", "x"}, {1.5, -0.5}, 0.25};
  const auto mb = json(m).get<LinearRewardModel>();
  CHECK(mb.features == m.features);
  CHECK(mb.weights == m.weights);
  CHECK(mb.bias == m.bias);
}

TEST_CASE("metrics and manifest") {
  MetricPoint m;
  m.episode = 200;
  m.frequency[Property::has_assertion] = 0.5;
  const json j = m;
  CHECK(j.at("schema") == kMetricsSchema);
  CHECK(j.at("episode") == 200);
  CHECK(j.at("frequency").at("has_assertion") == 0.5);

  std::vector<CorpusRecord> records;
  for (int repo = 0; repo < 4; ++repo)
    for (int i = 0; i < 3; ++i) records.push_back({"r" + std::to_string(repo), "C", "M", std::to_string(i), "t"});
  const SplitSpec spec;
  const auto manifest = split_manifest(split_by_repository(records, spec), spec);
  CHECK(manifest.at("schema") == kManifestSchema);
  CHECK(manifest.at("repo_to_split").size() == 4);
}
