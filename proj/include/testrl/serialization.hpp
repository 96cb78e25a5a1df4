#pragma once

#include <nlohmann/json.hpp>

#include "testrl/curation.hpp"
#include "testrl/prompt.hpp"
#include "testrl/quality.hpp"
#include "testrl/record.hpp"
#include "testrl/reward.hpp"
#include "testrl/reward_model.hpp"
#include "testrl/toy_training.hpp"

namespace testrl {

using nlohmann::json;

// Schema tags written into every JSON line.
inline constexpr const char* kRecordSchema = "record/v1";
inline constexpr const char* kQualitySchema = "quality/v1";
inline constexpr const char* kLabeledSchema = "labeled/v1";
inline constexpr const char* kPromptSchema = "prompt/v1";
inline constexpr const char* kPolicySchema = "policy/v1";
inline constexpr const char* kRewardModelSchema = "reward-model/v1";
inline constexpr const char* kMetricsSchema = "metrics/v1";
inline constexpr const char* kManifestSchema = "split-manifest/v1";
inline constexpr const char* kErrorSchema = "error/v1";

// Readers accept objects with or without the schema tag but reject a
// different one (json::other_error). Missing required fields raise
// json::out_of_range.

void to_json(json& j, const CorpusRecord& r);
void from_json(const json& j, CorpusRecord& r);

void to_json(json& j, const QualityReport& r);
void from_json(const json& j, QualityReport& r);

// Record fields, the report under "report", and "reward".
void to_json(json& j, const LabeledRecord& r);
void from_json(const json& j, LabeledRecord& r);

void to_json(json& j, const PromptRecord& r);
void from_json(const json& j, PromptRecord& r);

void to_json(json& j, const PolicyTable& p);
void from_json(const json& j, PolicyTable& p);

void to_json(json& j, const LinearRewardModel& m);
void from_json(const json& j, LinearRewardModel& m);

void to_json(json& j, const MetricPoint& m);

json split_manifest(const SplitResult& result, const SplitSpec& spec);

std::string_view to_string(RecordSource s);
RecordSource record_source_from_string(std::string_view s);

}  // namespace testrl
