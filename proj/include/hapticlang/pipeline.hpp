#pragma once

// End-to-end orchestration of the three phases from a single declarative
// config, with content-hash stage caching and a run manifest.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hapticlang/clustering.hpp"
#include "hapticlang/common.hpp"
#include "hapticlang/corpus.hpp"
#include "hapticlang/correlation.hpp"
#include "hapticlang/detail/sha256.hpp"
#include "hapticlang/embeddings.hpp"
#include "hapticlang/keyword_extraction.hpp"
#include "hapticlang/llm.hpp"
#include "hapticlang/sentiment_lexicon.hpp"
#include "hapticlang/signal_features.hpp"
#include "hapticlang/version.hpp"

#include "json.hpp"

namespace hapticlang {

class ValidationError : public Error {
 public:
  using Error::Error;
};

class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage " + stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

inline const std::vector<std::string>& pipeline_stage_names() {
  static const std::vector<std::string> names = {"extract",  "split",  "cluster", "features",
                                                 "correlate", "report", "eval-extraction"};
  return names;
}

struct PipelineConfig {
  // corpus
  std::filesystem::path signals_path;
  std::filesystem::path transcripts_path;
  std::optional<std::filesystem::path> gold_path;
  // extractor
  std::string method = "rule";  // rule | pos | llm
  std::optional<std::filesystem::path> patterns_path;
  LlmConfig llm;
  bool llm_offline = false;
  // sentiment
  std::filesystem::path lexicon_path;
  OolPolicy policy = OolPolicy::drop;
  // embeddings
  std::filesystem::path embeddings_path;
  EmbeddingFormat embedding_format = EmbeddingFormat::text;
  EmbeddingSource embedding_source = EmbeddingSource::other;
  // clustering
  Linkage linkage = Linkage::average;
  std::optional<int> k_positive;
  std::optional<int> k_negative;
  int k_min = 2;
  int k_max = 20;
  // features
  FeatureParams features;
  // output
  std::filesystem::path output_dir;

  static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  nlohmann::json to_json() const;
  void validate() const;
};

/// Applies --override key=value entries (dotted keys) onto raw config JSON.
inline void apply_override(nlohmann::json& config, const std::string& entry) {
  size_t eq = entry.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("override must look like key.path=value: '" + entry + "'");
  std::string key = entry.substr(0, eq);
  std::string value = entry.substr(eq + 1);
  std::string pointer = "/";
  for (char c : key) pointer += c == '.' ? '/' : c;
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // plain string
  config[nlohmann::json::json_pointer(pointer)] = parsed;
}

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline std::string utc_now_iso() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(fsio::read_file(path));
}

}  // namespace detail

inline PipelineConfig PipelineConfig::from_json(const nlohmann::json& j,
                                                const std::filesystem::path& base_dir) {
  PipelineConfig c;
  try {
    const auto& corpus = j.at("corpus");
    c.signals_path = detail::resolve(base_dir, corpus.at("signals").get<std::string>());
    c.transcripts_path = detail::resolve(base_dir, corpus.at("transcripts").get<std::string>());
    if (corpus.contains("gold") && !corpus.at("gold").is_null())
      c.gold_path = detail::resolve(base_dir, corpus.at("gold").get<std::string>());

    const auto& ex = j.at("extractor");
    c.method = ex.value("method", "rule");
    if (ex.contains("patterns") && !ex.at("patterns").is_null())
      c.patterns_path = detail::resolve(base_dir, ex.at("patterns").get<std::string>());
    if (ex.contains("llm")) {
      const auto& l = ex.at("llm");
      c.llm.endpoint = l.value("endpoint", "");
      c.llm.model = l.value("model", "");
      if (l.contains("prompt") && !l.at("prompt").is_null())
        c.llm.prompt_template = l.at("prompt").get<std::string>();
      c.llm.temperature = l.value("temperature", 0.0);
      if (l.contains("cache_dir") && !l.at("cache_dir").is_null())
        c.llm.cache_dir = detail::resolve(base_dir, l.at("cache_dir").get<std::string>());
      c.llm_offline = l.value("offline", false);
    }

    const auto& sent = j.at("sentiment");
    c.lexicon_path = detail::resolve(base_dir, sent.at("lexicon").get<std::string>());
    c.policy = parse_ool_policy(sent.value("policy", "drop"));

    const auto& emb = j.at("embeddings");
    c.embeddings_path = detail::resolve(base_dir, emb.at("path").get<std::string>());
    c.embedding_format = parse_embedding_format(emb.value("format", "text"));
    c.embedding_source = parse_embedding_source(emb.value("source", "other"));

    if (j.contains("clustering")) {
      const auto& cl = j.at("clustering");
      c.linkage = parse_linkage(cl.value("linkage", "average"));
      if (cl.contains("k_positive") && !cl.at("k_positive").is_null())
        c.k_positive = cl.at("k_positive").get<int>();
      if (cl.contains("k_negative") && !cl.at("k_negative").is_null())
        c.k_negative = cl.at("k_negative").get<int>();
      c.k_min = cl.value("k_min", 2);
      c.k_max = cl.value("k_max", 20);
    }

    if (j.contains("features")) {
      const auto& fe = j.at("features");
      c.features.threshold_ratio = fe.value("threshold_ratio", 0.1);
      c.features.min_gap_seconds = fe.value("min_gap_seconds", 0.01);
      c.features.frame = fe.value("frame", 1024);
      c.features.hop = fe.value("hop", 512);
    }

    c.output_dir = detail::resolve(base_dir, j.at("output_dir").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  return c;
}

inline nlohmann::json PipelineConfig::to_json() const {
  nlohmann::json llm_json{{"endpoint", llm.endpoint},
                          {"model", llm.model},
                          {"prompt", llm.prompt_template},
                          {"temperature", llm.temperature},
                          {"cache_dir", llm.cache_dir.string()},
                          {"offline", llm_offline}};
  nlohmann::json j{
      {"corpus",
       {{"signals", signals_path.string()},
        {"transcripts", transcripts_path.string()},
        {"gold", gold_path ? nlohmann::json(gold_path->string()) : nlohmann::json(nullptr)}}},
      {"extractor",
       {{"method", method},
        {"patterns", patterns_path ? nlohmann::json(patterns_path->string()) : nlohmann::json(nullptr)},
        {"llm", llm_json}}},
      {"sentiment", {{"lexicon", lexicon_path.string()}, {"policy", to_string(policy)}}},
      {"embeddings",
       {{"path", embeddings_path.string()},
        {"format", embedding_format == EmbeddingFormat::text
                       ? "text"
                       : embedding_format == EmbeddingFormat::word2vec_text ? "word2vec-text"
                                                                            : "gzip-text"},
        {"source", to_string(embedding_source)}}},
      {"clustering",
       {{"linkage", to_string(linkage)},
        {"k_positive", k_positive ? nlohmann::json(*k_positive) : nlohmann::json(nullptr)},
        {"k_negative", k_negative ? nlohmann::json(*k_negative) : nlohmann::json(nullptr)},
        {"k_min", k_min},
        {"k_max", k_max}}},
      {"features",
       {{"threshold_ratio", features.threshold_ratio},
        {"min_gap_seconds", features.min_gap_seconds},
        {"frame", features.frame},
        {"hop", features.hop}}},
      {"output_dir", output_dir.string()}};
  return j;
}

inline void PipelineConfig::validate() const {
  namespace fs = std::filesystem;
  auto require_file = [](const fs::path& p, const char* what) {
    if (p.empty()) throw ValidationError(std::string(what) + " not configured");
    if (!fs::exists(p)) throw ValidationError(std::string(what) + " not found: " + p.string());
  };
  require_file(signals_path, "corpus.signals");
  require_file(transcripts_path, "corpus.transcripts");
  if (gold_path) require_file(*gold_path, "corpus.gold");
  require_file(lexicon_path, "sentiment.lexicon");
  require_file(embeddings_path, "embeddings.path");
  if (patterns_path) require_file(*patterns_path, "extractor.patterns");
  if (method != "rule" && method != "pos" && method != "llm")
    throw ValidationError("extractor.method must be rule, pos, or llm (got '" + method + "')");
  if (method == "llm") {
    if (llm.model.empty()) throw ValidationError("extractor.llm.model required for llm method");
    if (llm.cache_dir.empty())
      throw ValidationError("extractor.llm.cache_dir required for llm method");
    if (llm.endpoint.empty() && !llm_offline)
      throw ValidationError("extractor.llm.endpoint required for llm method");
  }
  if (k_positive && *k_positive < 2) throw ValidationError("clustering.k_positive must be >= 2");
  if (k_negative && *k_negative < 2) throw ValidationError("clustering.k_negative must be >= 2");
  if (k_min < 2) throw ValidationError("clustering.k_min must be >= 2");
  if (k_max < k_min) throw ValidationError("clustering.k_max must be >= k_min");
  if (!(features.threshold_ratio > 0.0 && features.threshold_ratio < 1.0))
    throw ValidationError("features.threshold_ratio must be in (0, 1)");
  if (features.min_gap_seconds < 0.0)
    throw ValidationError("features.min_gap_seconds must be >= 0");
  if (features.frame < 2 || (features.frame & (features.frame - 1)) != 0)
    throw ValidationError("features.frame must be a power of two >= 2");
  if (features.hop < 1 || features.hop > features.frame)
    throw ValidationError("features.hop must be in [1, frame]");
  if (output_dir.empty()) throw ValidationError("output_dir not configured");
}

struct StageRecord {
  std::string inputs_hash;
  std::map<std::string, std::string> outputs;  // filename -> sha256
};

struct RunManifest {
  std::string tool_version;
  std::string created_at;
  nlohmann::json config_snapshot;
  std::map<std::string, StageRecord> stages;

  nlohmann::json to_json() const {
    nlohmann::json st = nlohmann::json::object();
    for (const auto& [name, rec] : stages)
      st[name] = {{"inputs_hash", rec.inputs_hash}, {"outputs", rec.outputs}};
    return {{"tool_version", tool_version},
            {"created_at", created_at},
            {"config", config_snapshot},
            {"stages", st}};
  }

  static std::optional<RunManifest> load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(fsio::read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    RunManifest m;
    m.tool_version = j.value("tool_version", "");
    m.created_at = j.value("created_at", "");
    m.config_snapshot = j.value("config", nlohmann::json::object());
    if (j.contains("stages") && j.at("stages").is_object()) {
      for (const auto& [name, rec] : j.at("stages").items()) {
        StageRecord r;
        r.inputs_hash = rec.value("inputs_hash", "");
        if (rec.contains("outputs"))
          r.outputs = rec.at("outputs").get<std::map<std::string, std::string>>();
        m.stages[name] = r;
      }
    }
    return m;
  }
};

struct PipelineOptions {
  std::ostream* log = nullptr;
  std::optional<std::string> only_stage;  // run exactly this stage, bypassing the cache
};

struct PipelineResult {
  RunManifest manifest;
  std::vector<std::pair<std::string, std::string>> stage_status;  // (stage, "ok"/"skipped")
};

namespace detail {

struct KeywordRecord {
  std::string signal_id;
  std::string participant_id;
  std::vector<std::string> keywords;  // normalized, duplicates preserved
};

inline std::vector<KeywordRecord> read_keywords_jsonl(const std::filesystem::path& path) {
  std::vector<KeywordRecord> out;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("signal_id") || !rec.contains("participant_id") ||
        !rec.contains("keywords"))
      throw Error(path.string() + ":" + std::to_string(line_number) + ": bad keyword record");
    out.push_back({rec.at("signal_id").get<std::string>(),
                   rec.at("participant_id").get<std::string>(),
                   rec.at("keywords").get<std::vector<std::string>>()});
  });
  return out;
}

inline void write_split_csv(const KeywordCounts& counts, const std::filesystem::path& path) {
  std::string out = "signal_id,keyword,count\n";
  for (const auto& [signal_id, per_keyword] : counts)
    for (const auto& [kw, count] : per_keyword)
      out += csvio::format_row({signal_id, kw, std::to_string(count)});
  fsio::write_file(path, out);
}

inline KeywordCounts read_split_csv(const std::filesystem::path& path) {
  KeywordCounts counts;
  bool header_seen = false;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    auto fields = csvio::parse_row(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "signal_id")
        throw Error(path.string() + ": unexpected split CSV header");
      return;
    }
    if (fields.size() != 3)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": expected 3 columns");
    auto n = text::parse_int(fields[2]);
    if (!n)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": bad count '" + fields[2] + "'");
    counts[fields[0]][fields[1]] += *n;
  });
  if (!header_seen) throw Error(path.string() + ": empty split CSV");
  return counts;
}

}  // namespace detail

/// Runs the configured pipeline. Stages whose input hashes and recorded
/// outputs are unchanged are skipped; the manifest is only rewritten when at
/// least one stage actually executed, so an all-cached re-run leaves the
/// output tree byte-identical.
class PipelineRun {
 public:
  PipelineRun(PipelineConfig config, PipelineOptions options = {})
      : config_(std::move(config)), options_(options) {}

  PipelineResult execute() {
    config_.validate();
    if (options_.only_stage) {
      const auto& names = pipeline_stage_names();
      if (std::find(names.begin(), names.end(), *options_.only_stage) == names.end())
        throw ValidationError("unknown stage '" + *options_.only_stage + "'");
      if (*options_.only_stage == "eval-extraction" && !config_.gold_path)
        throw ValidationError("eval-extraction requires corpus.gold");
    }
    std::filesystem::create_directories(config_.output_dir);
    manifest_path_ = config_.output_dir / "run_manifest.json";
    old_manifest_ = RunManifest::load(manifest_path_);
    new_manifest_.tool_version = HAPTICLANG_VERSION;
    new_manifest_.config_snapshot = config_.to_json();
    if (old_manifest_) new_manifest_.stages = old_manifest_->stages;

    run_stage("extract", [this] { return stage_extract(); });
    run_stage("split", [this] { return stage_split(); });
    run_stage("cluster", [this] { return stage_cluster(); });
    run_stage("features", [this] { return stage_features(); });
    run_stage("correlate", [this] { return stage_correlate(); });
    run_stage("report", [this] { return stage_report(); });
    if (config_.gold_path) run_stage("eval-extraction", [this] { return stage_eval(); });

    if (executed_any_ || !old_manifest_) {
      new_manifest_.created_at = detail::utc_now_iso();
      fsio::write_file(manifest_path_, new_manifest_.to_json().dump(2) + "\n");
    } else {
      new_manifest_.created_at = old_manifest_->created_at;
    }
    return {new_manifest_, stage_status_};
  }

 private:
  struct StagePlan {
    std::vector<std::filesystem::path> inputs;
    nlohmann::json params;
    std::vector<std::string> outputs;  // filenames inside output_dir
  };

  template <typename Fn>
  void run_stage(const std::string& name, Fn&& body) {
    if (options_.only_stage && *options_.only_stage != name) return;
    try {
      StagePlan plan = plan_stage(name);
      std::string inputs_hash = hash_inputs(name, plan);
      bool forced = options_.only_stage.has_value();
      if (!forced && can_skip(name, inputs_hash, plan)) {
        log() << "stage " << name << ": skipped (cached)\n";
        stage_status_.emplace_back(name, "skipped");
        return;
      }
      body();
      StageRecord rec;
      rec.inputs_hash = inputs_hash;
      for (const auto& out_name : plan.outputs) {
        auto p = config_.output_dir / out_name;
        if (!std::filesystem::exists(p))
          throw Error("stage did not produce expected output " + out_name);
        rec.outputs[out_name] = detail::sha256_file(p);
      }
      new_manifest_.stages[name] = std::move(rec);
      executed_any_ = true;
      log() << "stage " << name << ": ok\n";
      stage_status_.emplace_back(name, "ok");
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what());
    }
  }

  StagePlan plan_stage(const std::string& name) {
    StagePlan plan;
    auto out = [&](std::initializer_list<const char*> names) {
      for (const char* n : names) plan.outputs.emplace_back(n);
    };
    if (name == "extract") {
      plan.inputs = {config_.transcripts_path};
      plan.params = {{"method", config_.method}};
      if (config_.method == "rule" && config_.patterns_path) {
        plan.inputs.push_back(*config_.patterns_path);
        plan.params["patterns"] = config_.patterns_path->string();
      }
      if (config_.method == "llm")
        plan.params["llm"] = {{"endpoint", config_.llm.endpoint},
                              {"model", config_.llm.model},
                              {"prompt", config_.llm.prompt_template},
                              {"temperature", config_.llm.temperature}};
      out({"keywords.jsonl"});
    } else if (name == "split") {
      plan.inputs = {require_stage_output("split", "extract", "keywords.jsonl"),
                     config_.lexicon_path};
      if (config_.policy == OolPolicy::nearest_neighbor)
        plan.inputs.push_back(config_.embeddings_path);
      plan.params = {{"policy", to_string(config_.policy)}};
      out({"split_positive.csv", "split_negative.csv", "split_unassigned.csv"});
    } else if (name == "cluster") {
      plan.inputs = {require_stage_output("cluster", "split", "split_positive.csv"),
                     require_stage_output("cluster", "split", "split_negative.csv"),
                     config_.embeddings_path};
      plan.params = {{"linkage", to_string(config_.linkage)},
                     {"k_positive", config_.k_positive ? nlohmann::json(*config_.k_positive)
                                                       : nlohmann::json(nullptr)},
                     {"k_negative", config_.k_negative ? nlohmann::json(*config_.k_negative)
                                                       : nlohmann::json(nullptr)},
                     {"k_min", config_.k_min},
                     {"k_max", config_.k_max}};
      out({"cluster_assignments.csv", "cluster_labels.jsonl", "projection_positive.csv",
           "projection_negative.csv", "oov.csv"});
    } else if (name == "features") {
      plan.inputs = collect_signal_inputs();
      plan.params = {{"threshold_ratio", config_.features.threshold_ratio},
                     {"min_gap_seconds", config_.features.min_gap_seconds},
                     {"frame", config_.features.frame},
                     {"hop", config_.features.hop}};
      out({"features_raw.csv", "features_normalized.csv", "features_meta.json"});
    } else if (name == "correlate") {
      plan.inputs = {require_stage_output("correlate", "features", "features_normalized.csv"),
                     require_stage_output("correlate", "split", "split_positive.csv"),
                     require_stage_output("correlate", "split", "split_negative.csv"),
                     require_stage_output("correlate", "cluster", "cluster_assignments.csv"),
                     require_stage_output("correlate", "cluster", "cluster_labels.jsonl")};
      out({"counts_positive.csv", "counts_negative.csv", "correlation_positive.csv",
           "correlation_negative.csv"});
    } else if (name == "report") {
      plan.inputs = {require_stage_output("report", "correlate", "correlation_positive.csv"),
                     require_stage_output("report", "correlate", "correlation_negative.csv"),
                     require_stage_output("report", "cluster", "cluster_labels.jsonl")};
      out({"report.jsonl", "report.txt"});
    } else if (name == "eval-extraction") {
      plan.inputs = {require_stage_output("eval-extraction", "extract", "keywords.jsonl"),
                     *config_.gold_path};
      out({"extraction_eval.json"});
    }
    return plan;
  }

  std::filesystem::path require_stage_output(const std::string& stage, const char* produced_by,
                                             const char* filename) {
    auto p = config_.output_dir / filename;
    if (!std::filesystem::exists(p))
      throw StageError(stage, std::string("missing input ") + filename + " (run stage " +
                                  produced_by + " first)");
    return p;
  }

  std::vector<std::filesystem::path> collect_signal_inputs() const {
    namespace fs = std::filesystem;
    std::vector<fs::path> inputs;
    if (fs::is_directory(config_.signals_path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(config_.signals_path))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      return files;
    }
    inputs.push_back(config_.signals_path);
    nlohmann::json manifest = nlohmann::json::parse(fsio::read_file(config_.signals_path), nullptr, false);
    if (manifest.is_array()) {
      for (const auto& entry : manifest)
        if (entry.is_object() && entry.contains("file"))
          inputs.push_back(config_.signals_path.parent_path() /
                           entry.at("file").get<std::string>());
    }
    return inputs;
  }

  std::string hash_inputs(const std::string& name, const StagePlan& plan) {
    detail::Sha256 h;
    h.update(name);
    h.update("\n");
    h.update(plan.params.dump());
    for (const auto& p : plan.inputs) {
      h.update("\n");
      h.update(p.string());
      h.update("\n");
      if (!std::filesystem::exists(p)) throw Error("missing input file: " + p.string());
      h.update(detail::sha256_file(p));
    }
    auto d = h.digest();
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (auto b : d) {
      out += hex[b >> 4];
      out += hex[b & 0xf];
    }
    return out;
  }

  bool can_skip(const std::string& name, const std::string& inputs_hash, const StagePlan& plan) {
    if (!old_manifest_) return false;
    auto it = old_manifest_->stages.find(name);
    if (it == old_manifest_->stages.end()) return false;
    if (it->second.inputs_hash != inputs_hash) return false;
    for (const auto& out_name : plan.outputs) {
      auto rec = it->second.outputs.find(out_name);
      if (rec == it->second.outputs.end()) return false;
      auto p = config_.output_dir / out_name;
      if (!std::filesystem::exists(p)) return false;
      if (detail::sha256_file(p) != rec->second) return false;
    }
    return true;
  }

  // -- stages ---------------------------------------------------------------

  void stage_extract() {
    const Corpus& c = corpus();
    const RulePatterns* patterns = nullptr;
    RulePatterns loaded;
    if (config_.method == "rule") {
      if (config_.patterns_path) {
        loaded = RulePatterns::load(*config_.patterns_path);
        patterns = &loaded;
      } else {
        patterns = &RulePatterns::defaults();
      }
    }
    OfflineTransport offline;
    LlmTransport* transport = config_.llm_offline ? &offline : nullptr;

    std::string out;
    long total = 0;
    for (const auto& t : c.transcripts) {
      std::vector<Keyword> kws;
      if (config_.method == "rule")
        kws = rule_based_extract(t.text, *patterns);
      else if (config_.method == "pos")
        kws = pos_based_extract(t.text);
      else
        kws = llm_extract(t.text, config_.llm, transport);
      std::vector<std::string> normalized;
      normalized.reserve(kws.size());
      for (auto& k : kws) normalized.push_back(k.normalized);
      total += static_cast<long>(normalized.size());
      out += nlohmann::json{{"signal_id", t.signal_id},
                            {"participant_id", t.participant_id},
                            {"keywords", normalized}}
                 .dump() +
             "\n";
    }
    fsio::write_file(config_.output_dir / "keywords.jsonl", out);
    log() << "  extracted " << total << " keywords from " << c.transcripts.size()
          << " transcripts (" << config_.method << ")\n";
  }

  void stage_split() {
    auto records = detail::read_keywords_jsonl(config_.output_dir / "keywords.jsonl");
    KeywordCounts per_signal;  // turns merged per signal
    for (const auto& r : records)
      for (const auto& kw : r.keywords) ++per_signal[r.signal_id][kw];
    SentimentLexicon lexicon = load_nrc(config_.lexicon_path);
    std::optional<EmbeddingTable> table;
    if (config_.policy == OolPolicy::nearest_neighbor) {
      std::unordered_set<std::string> vocab;
      for (const auto& [sid, per_kw] : per_signal)
        for (const auto& [kw, _] : per_kw) vocab.insert(kw);
      vocab.merge(build_filter_vocabulary(vocab));
      for (const auto& w : lexicon.positive) vocab.insert(w);
      for (const auto& w : lexicon.negative) vocab.insert(w);
      table = load_embeddings(config_.embeddings_path, config_.embedding_format, &vocab,
                              config_.embedding_source);
    }
    auto split = split_sentiment(per_signal, lexicon, config_.policy,
                                 table ? &*table : nullptr);
    detail::write_split_csv(split.positive, config_.output_dir / "split_positive.csv");
    detail::write_split_csv(split.negative, config_.output_dir / "split_negative.csv");
    detail::write_split_csv(split.unassigned, config_.output_dir / "split_unassigned.csv");
    auto total = [](const KeywordCounts& c) {
      long n = 0;
      for (const auto& [_, per_kw] : c)
        for (const auto& [__, count] : per_kw) n += count;
      return n;
    };
    log() << "  positive " << total(split.positive) << ", negative " << total(split.negative)
          << ", unassigned " << total(split.unassigned) << " occurrences\n";
  }

  void stage_cluster() {
    auto pos_counts = detail::read_split_csv(config_.output_dir / "split_positive.csv");
    auto neg_counts = detail::read_split_csv(config_.output_dir / "split_negative.csv");

    auto frequencies = [](const KeywordCounts& counts) {
      std::map<std::string, long> freq;
      for (const auto& [_, per_kw] : counts)
        for (const auto& [kw, n] : per_kw) freq[kw] += n;
      return freq;
    };
    auto pos_freq = frequencies(pos_counts);
    auto neg_freq = frequencies(neg_counts);

    std::vector<std::string> all_keywords;
    for (const auto& [kw, _] : pos_freq) all_keywords.push_back(kw);
    for (const auto& [kw, _] : neg_freq) all_keywords.push_back(kw);
    auto vocab = build_filter_vocabulary(all_keywords);
    EmbeddingTable table = load_embeddings(config_.embeddings_path, config_.embedding_format,
                                           &vocab, config_.embedding_source);

    std::string assignments_csv = "keyword,sentiment,cluster_id,frequency\n";
    std::string labels_jsonl;
    std::string oov_csv = "sentiment,keyword\n";

    auto run_side = [&](const std::map<std::string, long>& freq, Sentiment sentiment,
                        std::optional<int> k_override, const char* projection_file) {
      VectorMap vm;
      std::vector<std::string> oov;
      for (const auto& [kw, _] : freq) {
        auto kv = embed_keyword(kw, table);
        bool usable = kv.has_value();
        if (usable) {
          double norm = 0.0;
          for (double x : kv->vector) norm += x * x;
          usable = norm > 0.0;  // zero vectors would corrupt cosine geometry
        }
        if (usable)
          vm.emplace(kw, std::move(kv->vector));
        else
          oov.push_back(kw);
      }
      for (const auto& kw : oov) oov_csv += csvio::format_row({to_string(sentiment), kw});

      ClusterSet set;
      set.sentiment = sentiment;
      if (vm.size() == 1) {
        Cluster c;
        c.id = sentiment == Sentiment::positive ? "P1" : "N1";
        c.members.emplace_back(vm.begin()->first, 0);
        set.clusters.push_back(std::move(c));
      } else if (vm.size() >= 2) {
        Dendrogram dendro = agglomerate(vm, config_.linkage);
        int k;
        if (k_override) {
          if (*k_override > static_cast<int>(vm.size()))
            throw Error("k override " + std::to_string(*k_override) + " exceeds the " +
                        std::to_string(vm.size()) + " embeddable " + to_string(sentiment) +
                        " keywords");
          k = *k_override;
        } else {
          k = choose_k(dendro, vm, config_.k_min, config_.k_max);
        }
        set = cut_to_k(dendro, k, sentiment);
      }
      set = label_clusters(std::move(set), freq);
      append_cluster_records_csv(set, assignments_csv);
      for (const auto& c : cluster_labels_json(set)) labels_jsonl += c.dump() + "\n";
      Projection2D proj = project_2d(vm, &set);
      write_projection_csv(proj, config_.output_dir / projection_file);
      log() << "  " << to_string(sentiment) << ": " << set.clusters.size() << " clusters over "
            << vm.size() << " keywords (" << oov.size() << " out-of-vocabulary)\n";
    };

    run_side(pos_freq, Sentiment::positive, config_.k_positive, "projection_positive.csv");
    run_side(neg_freq, Sentiment::negative, config_.k_negative, "projection_negative.csv");

    fsio::write_file(config_.output_dir / "cluster_assignments.csv", assignments_csv);
    fsio::write_file(config_.output_dir / "cluster_labels.jsonl", labels_jsonl);
    fsio::write_file(config_.output_dir / "oov.csv", oov_csv);
  }

  struct ClusterFileData {
    ClusterSet positive;
    ClusterSet negative;
  };

  ClusterFileData read_cluster_files() {
    ClusterFileData data;
    data.positive.sentiment = Sentiment::positive;
    data.negative.sentiment = Sentiment::negative;
    std::map<std::string, Cluster*> by_id;
    fsio::for_each_line(config_.output_dir / "cluster_labels.jsonl",
                        [&](const std::string& line, long) {
                          if (text::trim(line).empty()) return;
                          nlohmann::json j = nlohmann::json::parse(line);
                          Cluster c;
                          c.id = j.at("cluster_id").get<std::string>();
                          c.label = j.at("label").get<std::vector<std::string>>();
                          auto& set = j.at("sentiment").get<std::string>() == "positive"
                                          ? data.positive
                                          : data.negative;
                          set.clusters.push_back(std::move(c));
                        });
    for (auto* set : {&data.positive, &data.negative})
      for (auto& c : set->clusters) by_id[c.id] = &c;
    bool header = false;
    fsio::for_each_line(config_.output_dir / "cluster_assignments.csv",
                        [&](const std::string& line, long line_number) {
                          if (text::trim(line).empty()) return;
                          if (!header) {
                            header = true;
                            return;
                          }
                          auto fields = csvio::parse_row(line);
                          if (fields.size() != 4)
                            throw Error("cluster_assignments.csv:" + std::to_string(line_number) +
                                        ": expected 4 columns");
                          auto it = by_id.find(fields[2]);
                          if (it == by_id.end())
                            throw Error("cluster_assignments.csv references unknown cluster '" +
                                        fields[2] + "'");
                          auto freq = text::parse_int(fields[3]);
                          it->second->members.emplace_back(fields[0], freq ? *freq : 0);
                        });
    return data;
  }

  void stage_features() {
    FeatureMatrix raw = extract_all(corpus(), config_.features);
    FeatureMatrix normalized = normalize_features(raw);
    write_feature_csv(raw, config_.output_dir / "features_raw.csv");
    write_feature_csv(normalized, config_.output_dir / "features_normalized.csv");
    write_feature_meta(config_.features, normalized, config_.output_dir / "features_meta.json");
    if (!normalized.constant_columns.empty()) {
      log() << "  warning: constant feature column(s):";
      for (int c : normalized.constant_columns)
        log() << ' ' << kFeatureNames[static_cast<size_t>(c)];
      log() << '\n';
    }
    log() << "  " << raw.signal_ids.size() << " signals featurized\n";
  }

  void stage_correlate() {
    FeatureMatrix features = read_feature_csv(config_.output_dir / "features_normalized.csv");
    auto pos_counts = detail::read_split_csv(config_.output_dir / "split_positive.csv");
    auto neg_counts = detail::read_split_csv(config_.output_dir / "split_negative.csv");
    ClusterFileData clusters = read_cluster_files();

    auto run_side = [&](const KeywordCounts& counts, const ClusterSet& set, const char* count_file,
                        const char* corr_file) {
      CountMatrix cm = build_count_matrix(counts, set, features.signal_ids);
      write_count_csv(cm, config_.output_dir / count_file);
      CorrelationMatrix corr = correlate_all(features, cm);
      write_correlation_csv(corr, config_.output_dir / corr_file);
    };
    run_side(pos_counts, clusters.positive, "counts_positive.csv", "correlation_positive.csv");
    run_side(neg_counts, clusters.negative, "counts_negative.csv", "correlation_negative.csv");
    log() << "  correlated " << features.signal_ids.size() << " signals against "
          << clusters.positive.clusters.size() << "+" << clusters.negative.clusters.size()
          << " clusters\n";
  }

  void stage_report() {
    ClusterFileData clusters = read_cluster_files();
    CorrelationMatrix pos = read_correlation_csv(config_.output_dir / "correlation_positive.csv");
    CorrelationMatrix neg = read_correlation_csv(config_.output_dir / "correlation_negative.csv");

    auto top_map = [](const ClusterSet& set) {
      std::map<std::string, std::string> m;
      for (const auto& c : set.clusters)
        if (!c.label.empty()) m[c.id] = c.label.front();
      return m;
    };
    auto pos_reports = largest_report(pos, Sentiment::positive, top_map(clusters.positive));
    auto neg_reports = largest_report(neg, Sentiment::negative, top_map(clusters.negative));

    std::string jsonl;
    for (const auto* reports : {&pos_reports, &neg_reports}) {
      for (const auto& r : *reports) {
        nlohmann::json entry_array = nlohmann::json::array();
        for (const auto& e : r.entries)
          entry_array.push_back({{"cluster_id", e.cluster_id},
                                 {"top_keyword", e.top_keyword},
                                 {"r", e.r},
                                 {"sign", e.r < 0 ? "-" : "+"}});
        jsonl += nlohmann::json{{"feature", r.feature},
                                {"sentiment", to_string(r.sentiment)},
                                {"clusters", entry_array},
                                {"all_undefined", r.all_undefined}}
                     .dump() +
                 "\n";
      }
    }
    fsio::write_file(config_.output_dir / "report.jsonl", jsonl);
    fsio::write_file(config_.output_dir / "report.txt",
                     format_report_table(pos_reports, neg_reports));
    log() << "  report written\n";
  }

  static std::string format_report_table(const std::vector<FeatureReport>& pos,
                                         const std::vector<FeatureReport>& neg) {
    auto cell = [](const FeatureReport& r) -> std::string {
      if (r.all_undefined) return "(undefined)";
      std::string s;
      for (const auto& e : r.entries) {
        if (!s.empty()) s += ", ";
        s += (e.r < 0 ? "-" : "+") + e.cluster_id;
        if (!e.top_keyword.empty()) s += ": " + e.top_keyword;
      }
      return s;
    };
    std::vector<std::array<std::string, 3>> rows;
    rows.push_back({"Signal Feature", "Positive Keyword Clusters", "Negative Keyword Clusters"});
    for (size_t f = 0; f < kFeatureDisplayNames.size(); ++f)
      rows.push_back({kFeatureDisplayNames[f], cell(pos[f]), cell(neg[f])});
    std::array<size_t, 3> width{0, 0, 0};
    for (const auto& r : rows)
      for (size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], r[c].size());
    std::string out;
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t c = 0; c < 3; ++c) {
        std::string cellv = rows[i][c];
        cellv.resize(width[c], ' ');
        out += cellv;
        out += c + 1 < 3 ? " | " : "";
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += '\n';
      if (i == 0) {
        for (size_t c = 0; c < 3; ++c) {
          out += std::string(width[c] + (c > 0 ? 1 : 0), '-');
          out += c + 1 < 3 ? "-+" : "";
        }
        out += '\n';
      }
    }
    return out;
  }

  void stage_eval() {
    auto records = detail::read_keywords_jsonl(config_.output_dir / "keywords.jsonl");
    std::map<TranscriptKey, std::set<std::string>> predicted;
    for (const auto& r : records) {
      auto& set = predicted[{r.signal_id, r.participant_id}];
      set.insert(r.keywords.begin(), r.keywords.end());
    }
    auto gold = corpus::load_gold(*config_.gold_path);
    ExtractionScore score = score_extraction(predicted, gold);
    nlohmann::json j{{"method", config_.method},
                     {"precision", score.precision},
                     {"recall", score.recall},
                     {"f1", score.f1},
                     {"true_positive", score.total_true_positive},
                     {"predicted", score.total_predicted},
                     {"gold", score.total_gold},
                     {"transcripts", score.per_transcript.size()}};
    fsio::write_file(config_.output_dir / "extraction_eval.json", j.dump(2) + "\n");
    log() << "  " << config_.method << "  P=" << format_fixed(score.precision, 4)
          << "  R=" << format_fixed(score.recall, 4) << "  F1=" << format_fixed(score.f1, 4)
          << "\n";
  }

  const Corpus& corpus() {
    if (!corpus_)
      corpus_ = corpus::load(config_.signals_path, config_.transcripts_path, config_.gold_path);
    return *corpus_;
  }

  std::ostream& log() {
    static std::ostream null_stream(nullptr);
    return options_.log ? *options_.log : null_stream;
  }

  PipelineConfig config_;
  PipelineOptions options_;
  std::filesystem::path manifest_path_;
  std::optional<RunManifest> old_manifest_;
  RunManifest new_manifest_;
  std::optional<Corpus> corpus_;
  bool executed_any_ = false;
  std::vector<std::pair<std::string, std::string>> stage_status_;
};

inline PipelineResult run_pipeline(PipelineConfig config, PipelineOptions options = {}) {
  return PipelineRun(std::move(config), options).execute();
}

}  // namespace hapticlang
