#pragma once

// Static word-embedding tables: plain text (GloVe-style), header-prefixed
// text (word2vec/fastText exports), and gzip-compressed text with header
// (Numberbatch release format).

#include <zlib.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hapticlang/common.hpp"

namespace hapticlang {

enum class EmbeddingFormat { text, word2vec_text, gzip_text };
enum class EmbeddingSource { word2vec, glove, fasttext, numberbatch, other };

inline EmbeddingFormat parse_embedding_format(std::string_view s) {
  if (s == "text") return EmbeddingFormat::text;
  if (s == "word2vec-text" || s == "word2vec_text" || s == "word2vec-text-with-header")
    return EmbeddingFormat::word2vec_text;
  if (s == "gzip-text" || s == "gzip_text") return EmbeddingFormat::gzip_text;
  throw Error("unknown embedding format '" + std::string(s) + "'");
}

inline EmbeddingSource parse_embedding_source(std::string_view s) {
  if (s == "word2vec") return EmbeddingSource::word2vec;
  if (s == "glove") return EmbeddingSource::glove;
  if (s == "fasttext") return EmbeddingSource::fasttext;
  if (s == "numberbatch") return EmbeddingSource::numberbatch;
  if (s == "other") return EmbeddingSource::other;
  throw Error("unknown embedding source '" + std::string(s) + "'");
}

inline const char* to_string(EmbeddingSource s) {
  switch (s) {
    case EmbeddingSource::word2vec: return "word2vec";
    case EmbeddingSource::glove: return "glove";
    case EmbeddingSource::fasttext: return "fasttext";
    case EmbeddingSource::numberbatch: return "numberbatch";
    case EmbeddingSource::other: return "other";
  }
  return "?";
}

struct EmbeddingTable {
  int dimension = 0;
  std::unordered_map<std::string, std::vector<double>> entries;
  EmbeddingSource source = EmbeddingSource::other;

  const std::vector<double>* find(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }
};

struct KeywordVector {
  std::string keyword;
  std::vector<double> vector;
  double coverage = 0.0;  // fraction of constituent tokens found
};

namespace detail {

/// Line-oriented reader over plain or gzip-compressed files.
class EmbeddingLineReader {
 public:
  EmbeddingLineReader(const std::filesystem::path& path, bool gzipped) : gzipped_(gzipped) {
    if (gzipped_) {
      gz_ = gzopen(path.string().c_str(), "rb");
      if (!gz_) throw Error("cannot open file: " + path.string());
    } else {
      plain_.open(path, std::ios::binary);
      if (!plain_) throw Error("cannot open file: " + path.string());
    }
  }

  ~EmbeddingLineReader() {
    if (gz_) gzclose(gz_);
  }

  EmbeddingLineReader(const EmbeddingLineReader&) = delete;
  EmbeddingLineReader& operator=(const EmbeddingLineReader&) = delete;

  bool next(std::string& line) {
    if (!gzipped_) {
      if (!std::getline(plain_, line)) return false;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    line.clear();
    char buf[65536];
    while (true) {
      if (gzgets(gz_, buf, sizeof(buf)) == nullptr) return !line.empty();
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
    }
  }

 private:
  bool gzipped_;
  std::ifstream plain_;
  gzFile gz_ = nullptr;
};

}  // namespace detail

/// Normalizes an embedding key: lowercase, underscores to spaces; Numberbatch
/// "/c/en/" prefixes are stripped and non-English "/c/.." rows are rejected
/// (empty return means "skip this row").
inline std::string normalize_embedding_key(std::string_view raw) {
  std::string key(raw);
  if (key.rfind("/c/", 0) == 0) {
    if (key.rfind("/c/en/", 0) != 0) return {};
    key = key.substr(6);
  }
  key = text::to_lower(key);
  for (char& c : key)
    if (c == '_') c = ' ';
  return key;
}

/// Loads an embedding table, optionally filtered to a vocabulary set to bound
/// memory. Rows of inconsistent dimension fail with their line number; the
/// first occurrence of a duplicate key wins.
inline EmbeddingTable load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                                      const std::unordered_set<std::string>* vocabulary_filter = nullptr,
                                      EmbeddingSource source = EmbeddingSource::other) {
  detail::EmbeddingLineReader reader(path, format == EmbeddingFormat::gzip_text);
  EmbeddingTable table;
  table.source = source;
  std::string line;
  long line_number = 0;
  bool expect_header = format != EmbeddingFormat::text;

  while (reader.next(line)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    if (expect_header) {
      expect_header = false;
      auto toks = text::split_ws(line);
      if (toks.size() != 2 || !text::parse_int(toks[0]) || !text::parse_int(toks[1]))
        throw Error(path.string() + ":" + std::to_string(line_number) +
                    ": expected 'count dimension' header");
      continue;
    }
    size_t key_end = line.find_first_of(" \t");
    if (key_end == std::string::npos)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": row has no vector values");
    std::string key = normalize_embedding_key(std::string_view(line).substr(0, key_end));
    if (key.empty()) continue;  // non-English Numberbatch row

    auto values = text::split_ws(std::string_view(line).substr(key_end + 1));
    if (table.dimension == 0) {
      if (values.empty())
        throw Error(path.string() + ":" + std::to_string(line_number) + ": row has no vector values");
      table.dimension = static_cast<int>(values.size());
    } else if (static_cast<int>(values.size()) != table.dimension) {
      throw Error(path.string() + ":" + std::to_string(line_number) + ": expected " +
                  std::to_string(table.dimension) + " values, got " + std::to_string(values.size()));
    }
    if (vocabulary_filter && !vocabulary_filter->count(key)) continue;
    if (table.entries.count(key)) continue;  // first occurrence wins

    std::vector<double> vec;
    vec.reserve(values.size());
    for (const auto& v : values) {
      auto d = text::parse_double(v);
      if (!d)
        throw Error(path.string() + ":" + std::to_string(line_number) + ": non-numeric value '" + v + "'");
      vec.push_back(*d);
    }
    table.entries.emplace(std::move(key), std::move(vec));
  }
  if (table.dimension == 0) throw Error(path.string() + ": empty embedding file");
  return table;
}

/// Serializes in plain text format (keys sorted, spaces as underscores,
/// round-trip-exact floats), so load(save(t)) == t.
inline void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::map<std::string, const std::vector<double>*> sorted;
  for (const auto& [k, v] : table.entries) sorted.emplace(k, &v);
  std::string out;
  for (const auto& [k, v] : sorted) {
    std::string key = k;
    for (char& c : key)
      if (c == ' ') c = '_';
    out += key;
    for (double x : *v) {
      out += ' ';
      out += format_exact(x);
    }
    out += '\n';
  }
  fsio::write_file(path, out);
}

/// Keyword to vector: exact-phrase lookup first (Numberbatch stores multiword
/// concepts), then mean pooling over found constituent tokens. Absence is a
/// value, not an error.
inline std::optional<KeywordVector> embed_keyword(const std::string& keyword,
                                                  const EmbeddingTable& table) {
  if (const auto* v = table.find(keyword)) return KeywordVector{keyword, *v, 1.0};
  auto tokens = text::split_ws(keyword);
  if (tokens.size() < 2) return std::nullopt;
  std::vector<double> acc(static_cast<size_t>(table.dimension), 0.0);
  int found = 0;
  for (const auto& tok : tokens) {
    if (const auto* v = table.find(tok)) {
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += (*v)[i];
      ++found;
    }
  }
  if (found == 0) return std::nullopt;
  for (double& x : acc) x /= found;
  return KeywordVector{keyword, std::move(acc),
                       static_cast<double>(found) / static_cast<double>(tokens.size())};
}

/// 1 - cos(u, v), in [0, 2]. Zero vectors have no direction and are an error.
inline double cosine_distance(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size())
    throw Error("cosine_distance: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                std::to_string(v.size()) + ")");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw Error("cosine_distance: zero vector");
  double d = 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::max(0.0, std::min(2.0, d));
}

/// Vocabulary filter for load_embeddings: the phrases themselves plus their
/// constituent tokens (needed for mean pooling).
template <typename Range>
std::unordered_set<std::string> build_filter_vocabulary(const Range& keywords) {
  std::unordered_set<std::string> out;
  for (const auto& kw : keywords) {
    out.insert(kw);
    for (auto& tok : text::split_ws(kw)) out.insert(std::move(tok));
  }
  return out;
}

}  // namespace hapticlang
