#include "testrl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "testrl/completion.hpp"
#include "testrl/curation.hpp"
#include "testrl/errors.hpp"
#include "testrl/prompt.hpp"
#include "testrl/reward.hpp"
#include "testrl/reward_model.hpp"
#include "testrl/serialization.hpp"
#include "testrl/toy_training.hpp"

namespace testrl::cli {

namespace {

namespace fs = std::filesystem;

// A bad invocation: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string error_line(std::size_t line, const std::string& message) {
  return json{{"schema", kErrorSchema}, {"line", line}, {"error", message}}.dump();
}

// ---------------------------------------------------------------------------
// I/O

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw UsageError("cannot open input '" + path + "'");
    stream_ = &file_;
  }
  std::istream& get() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw UsageError("cannot open output '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

struct LineResult {
  std::string output;
  bool error = false;
};

using LineFn = std::function<LineResult(const std::string& line)>;

constexpr std::size_t kChunkLines = 2048;

// Maps every non-blank input line through `fn` on `jobs` threads, one
// bounded chunk at a time, writing results in input order. Exceptions from
// `fn` become error records. Returns the number of failed lines.
std::size_t map_lines(std::istream& in, std::ostream& out, unsigned jobs, const LineFn& fn) {
  std::size_t failures = 0;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> chunk;
  std::vector<LineResult> results;
  const auto flush = [&] {
    results.assign(chunk.size(), {});
    const auto work = [&](std::size_t first) {
      for (std::size_t i = first; i < chunk.size(); i += jobs) {
        try {
          results[i] = fn(chunk[i].second);
        } catch (const std::exception& e) {
          results[i] = {error_line(chunk[i].first, e.what()), true};
        }
      }
    };
    if (jobs <= 1 || chunk.size() < 2) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (const LineResult& r : results) {
      if (r.error) ++failures;
      if (!r.output.empty()) out << r.output << '\n';
    }
    chunk.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    chunk.emplace_back(line_no, std::move(line));
    if (chunk.size() >= kChunkLines) flush();
  }
  flush();
  return failures;
}

// Reads a whole JSONL file of T. Bad lines are reported on `err` as error
// records and counted.
template <typename T>
std::vector<T> read_all(std::istream& in, std::ostream& err, std::size_t& failures) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line).get<T>());
    } catch (const std::exception& e) {
      err << error_line(line_no, e.what()) << '\n';
      ++failures;
    }
  }
  return out;
}

template <typename T>
void write_all(std::ostream& out, const std::vector<T>& items) {
  for (const T& item : items) out << json(item).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Option parsing helpers

std::vector<Property> parse_properties(const std::vector<std::string>& names) {
  std::vector<Property> out;
  for (const auto& n : names) {
    const auto p = property_from_string(n);
    if (!p) throw UsageError("unknown property '" + n + "'");
    out.push_back(*p);
  }
  return out;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "individual") return Strategy::individual;
  if (s == "combined") return Strategy::combined;
  throw UsageError("unknown strategy '" + s + "'");
}

RewardScheme make_scheme(const std::vector<std::string>& properties, const std::string& strategy) {
  RewardScheme scheme{parse_properties(properties), parse_strategy(strategy)};
  try {
    scheme.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return scheme;
}

ScoreConfig make_score_config(const std::vector<std::string>& positive, const std::vector<std::string>& smells) {
  return ScoreConfig{parse_properties(positive), parse_properties(smells)};
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", fraction * 100.0);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

// ---------------------------------------------------------------------------
// Options shared by every subcommand

struct Common {
  std::string input = "-";
  std::string out = "-";
  std::string config;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_input = true) {
  if (with_input) sub->add_option("input", c.input, "Input JSONL file, '-' for stdin")->capture_default_str();
  sub->add_option("--out", c.out, "Output path, '-' for stdout")->capture_default_str();
  sub->add_option("--config", c.config, "Flat key = value config file");
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads for per-line commands (0 = hardware)")->capture_default_str();
}

unsigned worker_count(const Common& c) {
  if (c.jobs > 0) return c.jobs;
  return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

// ---------------------------------------------------------------------------
// Subcommands

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int finish(std::size_t failures, std::ostream& err, const std::string& what) {
  if (failures == 0) return kExitOk;
  err << what << ": " << failures << " line(s) failed\n";
  return kExitDataError;
}

struct AnalyzeArgs {
  std::string focal_field = "focal_method";
};

int cmd_analyze(const Common& c, const AnalyzeArgs& a, Streams io) {
  Input in(c.input, io.in);
  Output out(c.out, io.out);
  const auto failures = map_lines(in.get(), out.get(), worker_count(c), [&](const std::string& line) {
    const json j = json::parse(line);
    const std::string focal = j.at(a.focal_field).get<std::string>();
    const std::string test = j.at("test").get<std::string>();
    return LineResult{json(analyze(test, focal)).dump()};
  });
  return finish(failures, io.err, "analyze");
}

struct ReportArgs {
  std::vector<std::string> positive{"has_assertion", "invokes_focal"};
  std::vector<std::string> smells{"duplicate_assertion", "conditional_or_exception"};
  std::string json_out;
};

int cmd_report(const Common& c, const ReportArgs& a, Streams io) {
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto reports = read_all<QualityReport>(in.get(), io.err, failures);
  const CorpusStats stats = score_corpus(reports, make_score_config(a.positive, a.smells));

  Output out(c.out, io.out);
  std::ostream& os = out.get();
  constexpr std::size_t kLabel = 32, kValue = 10;
  os << pad_right("Property", kLabel) << pad_left("Frequency", kValue) << '\n';
  for (Property p : kAllProperties)
    os << pad_right(std::string(display_name(p)), kLabel) << pad_left(percent(stats.frequency.at(p)), kValue) << '\n';
  char score[32];
  std::snprintf(score, sizeof score, "%.4f", stats.quality_score);
  os << pad_right("Quality Score", kLabel) << pad_left(score, kValue) << '\n';
  os << pad_right("Tests", kLabel) << pad_left(std::to_string(stats.count), kValue) << '\n';

  json machine{{"schema", "report/v1"}, {"count", stats.count}, {"quality_score", stats.quality_score}};
  for (Property p : kAllProperties) {
    machine["frequency"][std::string(to_string(p))] = stats.frequency.at(p);
    machine["percent"][std::string(to_string(p))] = percent(stats.frequency.at(p));
  }
  if (a.json_out.empty()) {
    os << machine.dump() << '\n';
  } else {
    Output j(a.json_out, io.out);
    j.get() << machine.dump(2) << '\n';
  }
  return finish(failures, io.err, "report");
}

int cmd_truncate(const Common& c, Streams io) {
  Input in(c.input, io.in);
  Output out(c.out, io.out);
  const auto failures = map_lines(in.get(), out.get(), worker_count(c), [](const std::string& line) {
    const json j = json::parse(line);
    CorpusRecord record;
    if (j.contains("completion")) {
      RawCompletion raw{j.at("prompt_hint").get<std::string>(), j.at("completion").get<std::string>()};
      const RecordMetadata meta{j.value("repo", ""), j.value("focal_class", ""), j.value("focal_method", "")};
      record = assemble_record(j.value("prompt", ""), raw, meta);
    } else {
      record = j.get<CorpusRecord>();
      record.test = truncate_completion({"", record.test});
    }
    return LineResult{json(record).dump()};
  });
  return finish(failures, io.err, "truncate");
}

int cmd_prompt(const Common& c, const BudgetConfig& budget, Streams io) {
  try {
    budget.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Input in(c.input, io.in);
  Output out(c.out, io.out);
  const auto failures = map_lines(in.get(), out.get(), worker_count(c), [&](const std::string& line) {
    const json j = json::parse(line);
    const FocalFileTree tree = parse_focal_file(j.at("source").get<std::string>());
    const std::string focal = j.at("focal_method").get<std::string>();
    try {
      return LineResult{json(build_prompt(tree, focal, j.at("focal_path").get<std::string>(), budget)).dump()};
    } catch (const PromptTooLong& e) {
      return LineResult{json{{"schema", "dropped/v1"}, {"focal_method", focal}, {"reason", e.what()}}.dump()};
    }
  });
  return finish(failures, io.err, "prompt");
}

struct RewardArgs {
  std::vector<std::string> properties{"has_assertion"};
  std::string strategy = "individual";
};

int cmd_reward(const Common& c, const RewardArgs& a, Streams io) {
  const RewardScheme scheme = make_scheme(a.properties, a.strategy);
  Input in(c.input, io.in);
  Output out(c.out, io.out);
  const auto failures = map_lines(in.get(), out.get(), worker_count(c), [&](const std::string& line) {
    const CorpusRecord r = json::parse(line).get<CorpusRecord>();
    const auto labeled = label_dataset(std::span(&r, 1), scheme);
    return LineResult{json(labeled.front()).dump()};
  });
  return finish(failures, io.err, "reward");
}

int cmd_resample(const Common& c, std::size_t k, Streams io) {
  if (k == 0) throw UsageError("--k must be at least 1");
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto labeled = read_all<LabeledRecord>(in.get(), io.err, failures);
  if (failures) return finish(failures, io.err, "resample");
  const auto balanced = resample_balanced(labeled, k, c.seed);
  Output out(c.out, io.out);
  write_all(out.get(), balanced);
  return kExitOk;
}

int cmd_golden(const Common& c, bool keep_duplicates, Streams io) {
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto records = read_all<CorpusRecord>(in.get(), io.err, failures);
  auto kept = filter_golden(records);
  if (!keep_duplicates) kept = dedupe(kept);
  Output out(c.out, io.out);
  write_all(out.get(), kept);
  return finish(failures, io.err, "golden");
}

struct SplitArgs {
  double test_fraction = 0.05;
  double val_fraction = 0.10;
  bool rl_three_way = false;
};

int cmd_split(const Common& c, const SplitArgs& a, Streams io) {
  if (c.out == "-") throw UsageError("split needs --out <directory>");
  SplitSpec spec{a.test_fraction, a.val_fraction, a.rl_three_way, c.seed};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto records = read_all<CorpusRecord>(in.get(), io.err, failures);
  if (failures) return finish(failures, io.err, "split");
  const SplitResult result = split_by_repository(records, spec);
  fs::create_directories(c.out);
  for (const auto& [name, items] : result.records) {
    Output out((fs::path(c.out) / (name + ".jsonl")).string(), io.out);
    write_all(out.get(), items);
  }
  Output manifest((fs::path(c.out) / "manifest.json").string(), io.out);
  manifest.get() << split_manifest(result, spec).dump(2) << '\n';
  return kExitOk;
}

int cmd_subsample(const Common& c, std::size_t n, Streams io) {
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto records = read_all<CorpusRecord>(in.get(), io.err, failures);
  if (failures) return finish(failures, io.err, "subsample");
  Output out(c.out, io.out);
  write_all(out.get(), subsample(records, n, c.seed));
  return kExitOk;
}

int cmd_train_rm(const Common& c, RewardModelConfig cfg, Streams io) {
  cfg.seed = c.seed;
  Input in(c.input, io.in);
  std::size_t failures = 0;
  const auto labeled = read_all<LabeledRecord>(in.get(), io.err, failures);
  if (failures) return finish(failures, io.err, "train-rm");
  const RewardModelFit fit = train_reward_model(labeled, cfg);
  Output out(c.out, io.out);
  json j = fit.model;
  j["best_epoch"] = fit.best_epoch;
  j["train_loss"] = fit.train_loss;
  j["validation_loss"] = fit.validation_loss;
  out.get() << j.dump() << '\n';
  return kExitOk;
}

struct ToyArgs {
  RewardArgs reward;
  ReportArgs score;
  TrainConfig train;
  std::string init;
  bool freeze_init = false;
  std::string reward_model;
  std::string metrics = "-";
  std::string keep = "selected";
  std::string focal = "Add";
};

PolicyTable load_policy(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open policy '" + path + "'");
  PolicyTable p = json::parse(f).get<PolicyTable>();
  p.validate();
  return p;
}

int cmd_train_toy(const Common& c, ToyArgs a, Streams io) {
  a.train.seed = c.seed;
  try {
    a.train.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.keep != "selected" && a.keep != "final") throw UsageError("--keep must be 'selected' or 'final'");
  ToyTask task = ToyTask::calculator();
  task.focal_method = a.focal;
  PolicyTable init = a.init.empty() ? PolicyTable::uniform(task.vocabulary) : load_policy(a.init);
  if (a.freeze_init) init.freeze();

  RewardFn reward;
  if (!a.reward_model.empty()) {
    std::ifstream f(a.reward_model);
    if (!f) throw UsageError("cannot open reward model '" + a.reward_model + "'");
    reward = model_reward(json::parse(f).get<LinearRewardModel>());
  } else {
    reward = analyzer_reward(make_scheme(a.reward.properties, a.reward.strategy), task.focal_method);
  }
  const TrainingResult result =
      train_toy_policy(init, task, reward, a.train, make_score_config(a.score.positive, a.score.smells));

  Output metrics(a.metrics, io.out);
  for (const auto& point : result.metrics.points) metrics.get() << json(point).dump() << '\n';
  if (c.out != "-") {
    Output out(c.out, io.out);
    json j = a.keep == "selected" ? json(result.selected) : json(result.final_policy);
    j["selected_episode"] = result.metrics.selected_episode;
    out.get() << j.dump() << '\n';
  }
  return kExitOk;
}

struct SampleArgs {
  std::string policy;
  std::size_t n = 10;
  SamplingConfig sampling;
  std::string focal = "Add";
};

int cmd_sample(const Common& c, SampleArgs a, Streams io) {
  try {
    a.sampling.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const PolicyTable policy = load_policy(a.policy);
  ToyTask task;
  task.focal_method = a.focal;
  Rng rng(c.seed);
  Output out(c.out, io.out);
  for (std::size_t i = 0; i < a.n; ++i) {
    const Completion comp = sample_completion(policy, a.sampling, rng);
    CorpusRecord r;
    r.repo = "toy";
    r.focal_class = "Calculator";
    r.focal_method = task.focal_method;
    r.prompt = prompt_hint(task.focal_method);
    r.test = task.render(comp.tokens, policy);
    json j = r;
    j["tokens"] = json::array();
    for (int t : comp.tokens) j["tokens"].push_back(policy.vocabulary[t]);
    j["stopped"] = comp.stopped;
    out.get() << j.dump() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Config file support: keys fill in options the command line left unset.

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::vector<std::string> apply_config(CLI::App& app, const std::vector<std::string>& args) {
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (!config_path) return args;

  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; }))
      if (s->get_name() == a) sub = s;
    if (sub) break;
  }
  if (!sub) return args;

  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

  std::vector<std::string> extra;
  for (const auto& [raw_key, value] : read_config(*config_path)) {
    const std::string flag = "--" + normalize_key(raw_key);
    if (flag == "--config" || given.count(flag)) continue;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) {
      bool known = false;
      for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; }))
        known = known || s->get_option_no_throw(flag) != nullptr;
      if (!known) throw UsageError("unknown config key '" + raw_key + "'");
      continue;  // belongs to another stage
    }
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") extra.push_back(flag);
      else if (value != "false" && value != "0") throw UsageError("config key '" + raw_key + "' takes true/false");
      continue;
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  std::vector<std::string> merged = args;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return merged;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static quality analysis and curation pipeline for generated C# unit tests", "testrl"};
  app.require_subcommand(1);

  Common common;
  AnalyzeArgs analyze_args;
  ReportArgs report_args;
  BudgetConfig budget;
  RewardArgs reward_args;
  std::size_t k = 1;
  bool keep_duplicates = false;
  SplitArgs split_args;
  std::size_t n = 10;
  RewardModelConfig rm_cfg;
  ToyArgs toy;
  toy.train.sampling.max_tokens = 8;
  SampleArgs sample;
  sample.sampling.max_tokens = 8;

  const auto sampling_options = [](CLI::App* sub, SamplingConfig& s) {
    sub->add_option("--max-tokens", s.max_tokens, "Maximum tokens per completion")->capture_default_str();
    sub->add_option("--temperature", s.temperature, "Sampling temperature")->capture_default_str();
    sub->add_option("--top-p", s.top_p, "Nucleus mass")->capture_default_str();
    sub->add_option("--frequency-penalty", s.frequency_penalty, "Penalty per earlier occurrence")
        ->capture_default_str();
  };
  const auto score_options = [](CLI::App* sub, ReportArgs& r) {
    sub->add_option("--positive", r.positive, "Properties counted positively in the quality score")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--smells", r.smells, "Properties subtracted in the quality score")
        ->delimiter(',')
        ->capture_default_str();
  };
  const auto reward_options = [](CLI::App* sub, RewardArgs& r) {
    sub->add_option("--properties", r.properties, "Rewarded properties")->delimiter(',')->capture_default_str();
    sub->add_option("--strategy", r.strategy, "individual or combined")->capture_default_str();
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Quality report per record");
  add_common(analyze_cmd, common);
  analyze_cmd->add_option("--focal-field", analyze_args.focal_field, "Field naming the focal method")
      ->capture_default_str();

  auto* report_cmd = app.add_subcommand("report", "Property frequency table for quality reports");
  add_common(report_cmd, common);
  score_options(report_cmd, report_args);
  report_cmd->add_option("--json", report_args.json_out, "Write the machine-readable summary here");

  auto* truncate_cmd = app.add_subcommand("truncate", "Cut completions down to a single test method");
  add_common(truncate_cmd, common);

  auto* prompt_cmd = app.add_subcommand("prompt", "Build prompts with adaptive focal context");
  add_common(prompt_cmd, common);
  prompt_cmd->add_option("--prompt-budget", budget.prompt_token_budget)->capture_default_str();
  prompt_cmd->add_option("--completion-budget", budget.completion_token_budget)->capture_default_str();
  prompt_cmd->add_option("--chars-per-token", budget.chars_per_token)->capture_default_str();
  prompt_cmd->add_option("--model-context", budget.model_context)->capture_default_str();

  auto* reward_cmd = app.add_subcommand("reward", "Label records with rewards");
  add_common(reward_cmd, common);
  reward_options(reward_cmd, reward_args);

  auto* resample_cmd = app.add_subcommand("resample", "Balance labeled records for reward-model training");
  add_common(resample_cmd, common);
  resample_cmd->add_option("--k", k, "Number of rewarded properties")->capture_default_str();

  auto* golden_cmd = app.add_subcommand("golden", "Keep golden tests and drop duplicates");
  add_common(golden_cmd, common);
  golden_cmd->add_flag("--keep-duplicates", keep_duplicates, "Skip deduplication");

  auto* split_cmd = app.add_subcommand("split", "Repository-disjoint splits written to --out <dir>");
  add_common(split_cmd, common);
  split_cmd->add_option("--test-fraction", split_args.test_fraction)->capture_default_str();
  split_cmd->add_option("--val-fraction", split_args.val_fraction)->capture_default_str();
  split_cmd->add_flag("--rl-three-way", split_args.rl_three_way, "Split train into sft/rm/pm");

  auto* subsample_cmd = app.add_subcommand("subsample", "Uniform sample without replacement");
  add_common(subsample_cmd, common);
  subsample_cmd->add_option("-n,--count", n, "Records to keep")->capture_default_str();

  auto* train_rm_cmd = app.add_subcommand("train-rm", "Fit the linear reward model on labeled records");
  add_common(train_rm_cmd, common);
  train_rm_cmd->add_option("--epochs", rm_cfg.epochs)->capture_default_str();
  train_rm_cmd->add_option("--learning-rate", rm_cfg.learning_rate)->capture_default_str();
  train_rm_cmd->add_option("--patience", rm_cfg.patience)->capture_default_str();

  auto* toy_cmd = app.add_subcommand("train-toy", "PPO on the toy bigram policy; metrics JSONL, policy to --out");
  add_common(toy_cmd, common, false);
  reward_options(toy_cmd, toy.reward);
  score_options(toy_cmd, toy.score);
  sampling_options(toy_cmd, toy.train.sampling);
  toy_cmd->add_option("--episodes", toy.train.episodes)->capture_default_str();
  toy_cmd->add_option("--beta", toy.train.beta)->capture_default_str();
  toy_cmd->add_option("--epsilon", toy.train.epsilon)->capture_default_str();
  toy_cmd->add_option("--learning-rate", toy.train.learning_rate)->capture_default_str();
  toy_cmd->add_option("--batch-size", toy.train.batch_size)->capture_default_str();
  toy_cmd->add_option("--ppo-epochs", toy.train.ppo_epochs)->capture_default_str();
  toy_cmd->add_option("--eval-interval", toy.train.eval_interval)->capture_default_str();
  toy_cmd->add_option("--eval-samples", toy.train.eval_samples)->capture_default_str();
  toy_cmd->add_flag("--full-state-kl", toy.train.full_state_kl, "KL over every state");
  toy_cmd->add_option("--init", toy.init, "Start from this policy JSON");
  toy_cmd->add_flag("--freeze-init", toy.freeze_init, "Use the starting policy as the KL reference");
  toy_cmd->add_option("--reward-model", toy.reward_model, "Reward from a trained model instead of the analyzer");
  toy_cmd->add_option("--metrics", toy.metrics, "Metrics JSONL path")->capture_default_str();
  toy_cmd->add_option("--keep", toy.keep, "Policy to write: selected or final")->capture_default_str();
  toy_cmd->add_option("--focal", toy.focal, "Focal method of the toy task")->capture_default_str();

  auto* sample_cmd = app.add_subcommand("sample", "Sample completions from a policy as records");
  add_common(sample_cmd, common, false);
  sampling_options(sample_cmd, sample.sampling);
  sample_cmd->add_option("--policy", sample.policy, "Policy JSON")->required();
  sample_cmd->add_option("-n,--count", sample.n, "Completions to draw")->capture_default_str();
  sample_cmd->add_option("--focal", sample.focal, "Focal method of the toy task")->capture_default_str();

  try {
    const std::vector<std::string> merged = apply_config(app, args);
    std::vector<std::string> storage{"testrl"};
    storage.insert(storage.end(), merged.begin(), merged.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Streams io{in, out, err};
  try {
    if (*analyze_cmd) return cmd_analyze(common, analyze_args, io);
    if (*report_cmd) return cmd_report(common, report_args, io);
    if (*truncate_cmd) return cmd_truncate(common, io);
    if (*prompt_cmd) return cmd_prompt(common, budget, io);
    if (*reward_cmd) return cmd_reward(common, reward_args, io);
    if (*resample_cmd) return cmd_resample(common, k, io);
    if (*golden_cmd) return cmd_golden(common, keep_duplicates, io);
    if (*split_cmd) return cmd_split(common, split_args, io);
    if (*subsample_cmd) return cmd_subsample(common, n, io);
    if (*train_rm_cmd) return cmd_train_rm(common, rm_cfg, io);
    if (*toy_cmd) return cmd_train_toy(common, toy, io);
    if (*sample_cmd) return cmd_sample(common, sample, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace testrl::cli
