#pragma once

// Chat-completion keyword extraction against any OpenAI-style HTTP endpoint,
// with a content-addressed on-disk response cache so re-runs and tests are
// offline-deterministic.

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/detail/sha256.hpp"
#include "hapticlang/keyword_extraction.hpp"

#include "httplib.h"
#include "json.hpp"

namespace hapticlang {

inline constexpr const char* kDefaultLlmPrompt =
    "Extract keywords including sensational, emotional, metaphoric, and usage "
    "examples from the corresponding texts below.";

/// Environment variable consulted for the bearer token; never stored in
/// config files.
inline constexpr const char* kApiKeyEnvVar = "HAPTICLANG_API_KEY";

struct LlmConfig {
  std::string endpoint;  // full URL, e.g. https://host/v1/chat/completions
  std::string model;
  std::string prompt_template = kDefaultLlmPrompt;
  double temperature = 0.0;
  std::filesystem::path cache_dir;
};

class LlmTransport {
 public:
  virtual ~LlmTransport() = default;
  /// POSTs a JSON body and returns the response body on HTTP 200.
  virtual std::string post_json(const std::string& endpoint, const std::string& body) = 0;
};

class HttpTransport final : public LlmTransport {
 public:
  std::string post_json(const std::string& endpoint, const std::string& body) override {
    size_t scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) throw Error("invalid endpoint URL: " + endpoint);
    size_t path_start = endpoint.find('/', scheme_end + 3);
    std::string base = path_start == std::string::npos ? endpoint : endpoint.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : endpoint.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(kApiKeyEnvVar); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) throw Error("network failure contacting " + endpoint + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error("HTTP " + std::to_string(res->status) + " from " + endpoint + ": " +
                  res->body.substr(0, 200));
    return res->body;
  }
};

/// Fails on any network call; used to prove that warm-cache runs are offline.
class OfflineTransport final : public LlmTransport {
 public:
  std::string post_json(const std::string& endpoint, const std::string&) override {
    throw Error("offline mode: network call to " + endpoint + " refused");
  }
};

/// Splits a model response into keyword surfaces. Accepts a JSON string
/// array, or lines/commas/semicolons with optional list markers.
inline std::vector<std::string> parse_keyword_list(std::string_view content) {
  std::string_view trimmed = text::trim(content);
  std::vector<std::string> out;
  if (!trimmed.empty() && trimmed.front() == '[') {
    auto arr = nlohmann::json::parse(trimmed, nullptr, false);
    if (arr.is_array()) {
      for (const auto& v : arr)
        if (v.is_string() && !text::trim(v.get<std::string>()).empty())
          out.push_back(v.get<std::string>());
      return out;
    }
  }
  std::string body(trimmed);
  if (body.size() > 9 && text::to_lower(body.substr(0, 9)) == "keywords:") body = body.substr(9);
  for (std::string& line : text::split(body, '\n')) {
    std::string_view lv = text::trim(line);
    // strip list markers like "- ", "* ", "3." or "7)"
    if (!lv.empty() && (lv.front() == '-' || lv.front() == '*')) lv = text::trim(lv.substr(1));
    size_t digits = 0;
    while (digits < lv.size() && std::isdigit(static_cast<unsigned char>(lv[digits]))) ++digits;
    if (digits > 0 && digits < lv.size() && (lv[digits] == '.' || lv[digits] == ')'))
      lv = text::trim(lv.substr(digits + 1));
    std::string piece(lv);
    for (char& c : piece)
      if (c == ';') c = ',';
    for (const std::string& tok : text::split(piece, ',')) {
      std::string t(text::trim(tok));
      if (!t.empty()) out.push_back(std::move(t));
    }
  }
  return out;
}

inline std::string llm_cache_key(const LlmConfig& config, std::string_view text_body) {
  detail::Sha256 h;
  h.update(config.model);
  h.update("\x1f");
  h.update(config.prompt_template);
  h.update("\x1f");
  h.update(text_body);
  auto d = h.digest();
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (auto b : d) {
    out += hex[b >> 4];
    out += hex[b & 0xf];
  }
  return out;
}

/// Extracts keywords via the configured endpoint. The raw response is cached
/// on disk keyed by (model, prompt, text) content hash; cache hits perform no
/// network operation. Network failure with a cold cache is an error — there
/// is no silent fallback.
inline std::vector<Keyword> llm_extract(std::string_view transcript_text, const LlmConfig& config,
                                        LlmTransport* transport = nullptr) {
  std::string body_text(text::trim(transcript_text));
  if (body_text.empty()) return {};
  if (config.model.empty()) throw Error("llm_extract: model not configured");
  if (config.cache_dir.empty()) throw Error("llm_extract: cache_dir not configured");

  namespace fs = std::filesystem;
  fs::create_directories(config.cache_dir);
  fs::path cache_file = config.cache_dir / (llm_cache_key(config, body_text) + ".json");

  std::vector<std::string> surfaces;
  if (fs::exists(cache_file)) {
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(fsio::read_file(cache_file));
      surfaces = rec.at("keywords").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error("corrupt cache entry " + cache_file.string() + ": " + e.what());
    }
  } else {
    if (config.endpoint.empty()) throw Error("llm_extract: endpoint not configured and cache is cold");
    HttpTransport default_transport;
    LlmTransport* t = transport ? transport : &default_transport;
    nlohmann::json request{
        {"model", config.model},
        {"messages",
         {{{"role", "system"}, {"content", config.prompt_template}},
          {{"role", "user"}, {"content", body_text}}}},
        {"temperature", config.temperature}};
    std::string response = t->post_json(config.endpoint, request.dump());

    std::string content;
    try {
      nlohmann::json rj = nlohmann::json::parse(response);
      const auto& choice = rj.at("choices").at(0);
      if (choice.contains("message"))
        content = choice.at("message").at("content").get<std::string>();
      else
        content = choice.at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error("unparseable chat response: " + response.substr(0, 500));
    }
    surfaces = parse_keyword_list(content);

    nlohmann::json rec{{"model", config.model},
                       {"prompt", config.prompt_template},
                       {"text", body_text},
                       {"raw_response", response},
                       {"keywords", surfaces}};
    // tmp + rename keeps concurrent writers per key last-writer-wins.
    fs::path tmp = cache_file;
    tmp += ".tmp";
    fsio::write_file(tmp, rec.dump(2) + "\n");
    fs::rename(tmp, cache_file);
  }

  std::vector<Keyword> out;
  for (auto& s : surfaces) {
    std::string norm = normalize_keyword(s);
    if (norm.empty()) continue;
    out.push_back({std::move(s), std::move(norm), KeywordSource::llm});
  }
  return out;
}

}  // namespace hapticlang
