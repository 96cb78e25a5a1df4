#include "testrl/serialization.hpp"

namespace testrl {

namespace {

void check_schema(const json& j, const char* expected) {
  if (!j.is_object()) throw json::type_error::create(302, "expected a JSON object", &j);
  if (auto it = j.find("schema"); it != j.end() && it->get<std::string>() != expected)
    throw json::other_error::create(501, "schema '" + it->get<std::string>() + "' where '" + expected + "' was expected",
                                    &j);
}

}  // namespace

std::string_view to_string(RecordSource s) { return s == RecordSource::human ? "human" : "generated"; }

RecordSource record_source_from_string(std::string_view s) {
  if (s == "generated") return RecordSource::generated;
  if (s == "human") return RecordSource::human;
  throw json::other_error::create(501, "unknown record source '" + std::string(s) + "'", nullptr);
}

void to_json(json& j, const CorpusRecord& r) {
  j = json{{"schema", kRecordSchema},   {"repo", r.repo},     {"focal_class", r.focal_class},
           {"focal_method", r.focal_method}, {"prompt", r.prompt}, {"test", r.test},
           {"source", to_string(r.source)}};
}

void from_json(const json& j, CorpusRecord& r) {
  check_schema(j, kRecordSchema);
  r.repo = j.at("repo").get<std::string>();
  r.focal_class = j.value("focal_class", "");
  r.focal_method = j.at("focal_method").get<std::string>();
  r.prompt = j.value("prompt", "");
  r.test = j.at("test").get<std::string>();
  r.source = record_source_from_string(j.value("source", "generated"));
}

void to_json(json& j, const QualityReport& r) {
  j = json{{"schema", kQualitySchema}};
  for (Property p : kAllProperties) j[std::string(to_string(p))] = r.get(p);
  j["focal_method_name"] = r.focal_method_name;
  j["low_confidence"] = r.low_confidence;
}

void from_json(const json& j, QualityReport& r) {
  check_schema(j, kQualitySchema);
  for (Property p : kAllProperties) r.set(p, j.at(std::string(to_string(p))).get<bool>());
  r.focal_method_name = j.value("focal_method_name", "");
  r.low_confidence = j.value("low_confidence", false);
}

void to_json(json& j, const LabeledRecord& r) {
  j = r.record;
  j["schema"] = kLabeledSchema;
  json report = r.report;
  report.erase("schema");
  j["report"] = std::move(report);
  j["reward"] = r.reward;
}

void from_json(const json& j, LabeledRecord& r) {
  check_schema(j, kLabeledSchema);
  json record = j;
  record.erase("schema");
  record.erase("report");
  record.erase("reward");
  r.record = record.get<CorpusRecord>();
  r.report = j.at("report").get<QualityReport>();
  r.reward = j.at("reward").get<int>();
}

void to_json(json& j, const PromptRecord& r) {
  j = json{{"schema", kPromptSchema},
           {"focal_path", r.focal_path},
           {"test_path", r.test_path},
           {"focal_method", r.focal_method},
           {"context_level", r.context_level},
           {"prompt_text", r.prompt_text},
           {"estimated_tokens", r.estimated_tokens}};
}

void from_json(const json& j, PromptRecord& r) {
  check_schema(j, kPromptSchema);
  r.focal_path = j.at("focal_path").get<std::string>();
  r.test_path = j.at("test_path").get<std::string>();
  r.focal_method = j.at("focal_method").get<std::string>();
  r.context_level = j.at("context_level").get<int>();
  r.prompt_text = j.at("prompt_text").get<std::string>();
  r.estimated_tokens = j.at("estimated_tokens").get<std::size_t>();
}

void to_json(json& j, const PolicyTable& p) {
  j = json{{"schema", kPolicySchema},
           {"vocabulary", p.vocabulary},
           {"logits", p.logits},
           {"initial_logits", p.initial_logits}};
}

void from_json(const json& j, PolicyTable& p) {
  check_schema(j, kPolicySchema);
  p.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
  p.logits = j.at("logits").get<std::vector<std::vector<double>>>();
  p.initial_logits = j.contains("initial_logits") ? j.at("initial_logits").get<std::vector<std::vector<double>>>()
                                                  : p.logits;
}

void to_json(json& j, const LinearRewardModel& m) {
  j = json{{"schema", kRewardModelSchema}, {"features", m.features}, {"weights", m.weights}, {"bias", m.bias}};
}

void from_json(const json& j, LinearRewardModel& m) {
  check_schema(j, kRewardModelSchema);
  m.features = j.at("features").get<std::vector<std::string>>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  if (m.features.size() != m.weights.size())
    throw json::other_error::create(501, "reward model has mismatched features and weights", &j);
}

void to_json(json& j, const MetricPoint& m) {
  json freq = json::object();
  for (const auto& [p, f] : m.frequency) freq[std::string(to_string(p))] = f;
  j = json{{"schema", kMetricsSchema},  {"episode", m.episode},        {"mean_reward", m.mean_reward},
           {"kl", m.mean_kl},           {"frequency", std::move(freq)}, {"validation_score", m.validation_score}};
}

json split_manifest(const SplitResult& result, const SplitSpec& spec) {
  json splits = json::array();
  for (const auto& s : result.splits) {
    splits.push_back({{"name", s.name},
                      {"target_fraction", s.target_fraction},
                      {"actual_fraction", result.actual_fraction(s.name)},
                      {"records", s.records},
                      {"repos", s.repos}});
  }
  return json{{"schema", kManifestSchema},
              {"seed", spec.seed},
              {"test_fraction", spec.test_fraction},
              {"val_fraction", spec.val_fraction},
              {"rl_three_way", spec.rl_three_way},
              {"total_records", result.total_records},
              {"splits", std::move(splits)},
              {"repo_to_split", result.repo_to_split}};
}

}  // namespace testrl
