// Command-line front end: full pipeline runs, single stages, and standalone
// extraction/evaluation over plain files.
//
// Exit codes: 0 success, 1 validation error, 2 stage failure.

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hapticlang/pipeline.hpp"
#include "hapticlang/version.hpp"

namespace fs = std::filesystem;
using namespace hapticlang;

namespace {

struct RunArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string stage;  // empty = all stages
};

int do_run(const RunArgs& args) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(fsio::read_file(fs::path(args.config_path)));
  } catch (const std::exception& e) {
    std::cerr << "error: cannot read config " << args.config_path << ": " << e.what() << "\n";
    return 1;
  }
  for (const auto& o : args.overrides) apply_override(raw, o);
  PipelineConfig config =
      PipelineConfig::from_json(raw, fs::absolute(fs::path(args.config_path)).parent_path());
  PipelineOptions options;
  options.log = &std::cout;
  if (!args.stage.empty()) options.only_stage = args.stage;
  run_pipeline(std::move(config), options);
  return 0;
}

struct ExtractArgs {
  std::string method;
  std::string input;
  std::string output;
  std::string patterns;
  std::string endpoint;
  std::string model;
  std::string cache_dir;
  double temperature = 0.0;
  bool offline = false;
};

int do_extract(const ExtractArgs& args) {
  auto transcripts = corpus::load_transcripts(args.input);
  const RulePatterns* patterns = nullptr;
  RulePatterns loaded;
  if (args.method == "rule") {
    if (!args.patterns.empty()) {
      loaded = RulePatterns::load(args.patterns);
      patterns = &loaded;
    } else {
      patterns = &RulePatterns::defaults();
    }
  }
  LlmConfig llm;
  llm.endpoint = args.endpoint;
  llm.model = args.model;
  llm.temperature = args.temperature;
  llm.cache_dir = args.cache_dir;
  OfflineTransport offline;
  LlmTransport* transport = args.offline ? &offline : nullptr;

  std::string out;
  long total = 0;
  for (const auto& t : transcripts) {
    std::vector<Keyword> kws;
    if (args.method == "rule")
      kws = rule_based_extract(t.text, *patterns);
    else if (args.method == "pos")
      kws = pos_based_extract(t.text);
    else
      kws = llm_extract(t.text, llm, transport);
    std::vector<std::string> normalized;
    for (auto& k : kws) normalized.push_back(k.normalized);
    total += static_cast<long>(normalized.size());
    out += nlohmann::json{{"signal_id", t.signal_id},
                          {"participant_id", t.participant_id},
                          {"keywords", normalized}}
               .dump() +
           "\n";
  }
  fsio::write_file(args.output, out);
  std::cout << "extracted " << total << " keywords from " << transcripts.size()
            << " transcripts -> " << args.output << "\n";
  return 0;
}

int do_eval(const std::string& pred_path, const std::string& gold_path) {
  auto records = detail::read_keywords_jsonl(pred_path);
  std::map<TranscriptKey, std::set<std::string>> predicted;
  for (const auto& r : records) {
    auto& set = predicted[{r.signal_id, r.participant_id}];
    set.insert(r.keywords.begin(), r.keywords.end());
  }
  auto gold = corpus::load_gold(gold_path);
  ExtractionScore score = score_extraction(predicted, gold);
  std::cout << "Precision\tRecall\tF1\n"
            << format_fixed(score.precision, 4) << "\t" << format_fixed(score.recall, 4) << "\t"
            << format_fixed(score.f1, 4) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grounds free-form haptic descriptions to electrovibration signal features"};
  app.set_version_flag("--version", HAPTICLANG_VERSION);
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run the full pipeline from a config file");
  run->add_option("--config", run_args.config_path, "pipeline config JSON")->required();
  run->add_option("--stage", run_args.stage, "run exactly one stage");
  run->add_option("--override", run_args.overrides, "config override key.path=value (repeatable)");

  // per-stage aliases for `run --stage <name>`
  std::vector<std::pair<CLI::App*, std::string>> stage_commands;
  for (const char* name : {"split", "cluster", "features", "correlate", "report"}) {
    auto* sub = app.add_subcommand(name, std::string("run only the ") + name + " stage");
    sub->add_option("--config", run_args.config_path, "pipeline config JSON")->required();
    sub->add_option("--override", run_args.overrides, "config override key.path=value");
    stage_commands.emplace_back(sub, name);
  }

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "extract keywords from a transcripts file");
  extract->add_option("--method", extract_args.method, "rule | pos | llm")->required();
  extract->add_option("--in", extract_args.input, "transcripts JSONL");
  extract->add_option("--out", extract_args.output, "keywords JSONL to write");
  extract->add_option("--patterns", extract_args.patterns, "rule pattern file (rule method)");
  extract->add_option("--endpoint", extract_args.endpoint, "chat-completion endpoint URL");
  extract->add_option("--model", extract_args.model, "model name");
  extract->add_option("--cache-dir", extract_args.cache_dir, "LLM response cache directory");
  extract->add_option("--temperature", extract_args.temperature, "sampling temperature");
  extract->add_flag("--offline", extract_args.offline,
                    "refuse network calls; only the response cache may answer");
  std::string extract_config;
  extract->add_option("--config", extract_config, "run as pipeline stage with this config");

  std::string pred_path, gold_path, eval_config;
  auto* eval = app.add_subcommand("eval-extraction",
                                  "score predicted keywords against gold annotations");
  eval->add_option("--pred", pred_path, "predicted keywords JSONL");
  eval->add_option("--gold", gold_path, "gold annotations JSONL");
  eval->add_option("--config", eval_config, "run as pipeline stage with this config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return do_run(run_args);
    for (auto& [sub, name] : stage_commands) {
      if (sub->parsed()) {
        run_args.stage = name;
        return do_run(run_args);
      }
    }
    if (extract->parsed()) {
      if (!extract_config.empty()) {
        return do_run({extract_config, {}, "extract"});
      }
      if (extract_args.input.empty() || extract_args.output.empty())
        throw ValidationError("extract needs --in and --out (or --config)");
      if (extract_args.method != "rule" && extract_args.method != "pos" &&
          extract_args.method != "llm")
        throw ValidationError("--method must be rule, pos, or llm");
      if (extract_args.method == "llm" && extract_args.cache_dir.empty())
        throw ValidationError("llm extraction needs --cache-dir");
      return do_extract(extract_args);
    }
    if (eval->parsed()) {
      if (!eval_config.empty()) return do_run({eval_config, {}, "eval-extraction"});
      if (pred_path.empty() || gold_path.empty())
        throw ValidationError("eval-extraction needs --pred and --gold (or --config)");
      return do_eval(pred_path, gold_path);
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
