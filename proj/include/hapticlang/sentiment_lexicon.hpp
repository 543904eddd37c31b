#pragma once

// Positive/negative keyword routing via an NRC-format word-affect lexicon.
// The lexicon file itself is not redistributed; see README for the layout.

#include <filesystem>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/embeddings.hpp"

namespace hapticlang {

struct SentimentLexicon {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;  // a word may be in both
};

/// Parses rows of word<TAB>affect<TAB>{0,1}. Rows whose affect is neither
/// "positive" nor "negative" are ignored; malformed rows fail with their
/// line number.
inline SentimentLexicon load_nrc(const std::filesystem::path& path) {
  SentimentLexicon lex;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw Error(path.string() + ":" + std::to_string(line_number) +
                  ": expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    std::string word = text::to_lower(text::trim(fields[0]));
    std::string affect = text::to_lower(text::trim(fields[1]));
    std::string flag(text::trim(fields[2]));
    if (flag != "0" && flag != "1")
      throw Error(path.string() + ":" + std::to_string(line_number) + ": invalid flag '" + flag +
                  "' (must be 0 or 1)");
    if (word.empty())
      throw Error(path.string() + ":" + std::to_string(line_number) + ": empty word");
    if (flag == "1") {
      if (affect == "positive") lex.positive.insert(word);
      else if (affect == "negative") lex.negative.insert(word);
    }
  });
  if (lex.positive.empty()) throw Error(path.string() + ": lexicon has no positive entries");
  if (lex.negative.empty()) throw Error(path.string() + ": lexicon has no negative entries");
  return lex;
}

/// How keywords absent from the lexicon are handled.
enum class OolPolicy { drop, both, nearest_neighbor };

inline OolPolicy parse_ool_policy(std::string_view s) {
  if (s == "drop") return OolPolicy::drop;
  if (s == "both") return OolPolicy::both;
  if (s == "nearest-neighbor" || s == "nearest_neighbor" || s == "nearest")
    return OolPolicy::nearest_neighbor;
  throw Error("unknown out-of-lexicon policy '" + std::string(s) + "'");
}

inline const char* to_string(OolPolicy p) {
  switch (p) {
    case OolPolicy::drop: return "drop";
    case OolPolicy::both: return "both";
    case OolPolicy::nearest_neighbor: return "nearest-neighbor";
  }
  return "?";
}

/// signal id -> normalized keyword -> occurrence count
using KeywordCounts = std::map<std::string, std::map<std::string, long>>;

struct SentimentedKeywords {
  KeywordCounts positive;
  KeywordCounts negative;
  KeywordCounts unassigned;  // out-of-lexicon under the drop policy
};

namespace detail {

/// Majority sentiment among the k nearest lexicon words in embedding space.
/// Words carrying both polarities vote for both; a tied vote assigns both.
inline std::pair<bool, bool> nearest_neighbor_sentiment(const std::string& keyword,
                                                        const SentimentLexicon& lexicon,
                                                        const EmbeddingTable& table, int k = 5) {
  auto kv = embed_keyword(keyword, table);
  if (!kv) return {false, false};
  struct Candidate {
    double distance;
    const std::string* word;
  };
  std::vector<Candidate> candidates;
  auto consider = [&](const std::string& word) {
    const auto* v = table.find(word);
    if (!v) return;
    candidates.push_back({cosine_distance(kv->vector, *v), &word});
  };
  for (const auto& w : lexicon.positive) consider(w);
  for (const auto& w : lexicon.negative)
    if (!lexicon.positive.count(w)) consider(w);
  if (candidates.empty()) return {false, false};
  auto by_distance_then_word = [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return *a.word < *b.word;
  };
  size_t take = std::min<size_t>(static_cast<size_t>(k), candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<long>(take),
                    candidates.end(), by_distance_then_word);
  int pos_votes = 0, neg_votes = 0;
  for (size_t i = 0; i < take; ++i) {
    if (lexicon.positive.count(*candidates[i].word)) ++pos_votes;
    if (lexicon.negative.count(*candidates[i].word)) ++neg_votes;
  }
  if (pos_votes > neg_votes) return {true, false};
  if (neg_votes > pos_votes) return {false, true};
  return {true, true};
}

}  // namespace detail

/// Routes per-signal keyword counts into positive/negative/unassigned sets.
/// Lexicon members go to their set(s); non-members follow the policy. The
/// nearest-neighbor policy requires a loaded embedding table.
inline SentimentedKeywords split_sentiment(const KeywordCounts& keywords,
                                           const SentimentLexicon& lexicon, OolPolicy policy,
                                           const EmbeddingTable* table = nullptr) {
  if (policy == OolPolicy::nearest_neighbor && table == nullptr)
    throw Error("nearest-neighbor policy requires a loaded embedding table");
  SentimentedKeywords out;
  std::map<std::string, std::pair<bool, bool>> nn_cache;
  for (const auto& [signal_id, per_keyword] : keywords) {
    for (const auto& [keyword, count] : per_keyword) {
      bool in_pos = lexicon.positive.count(keyword) > 0;
      bool in_neg = lexicon.negative.count(keyword) > 0;
      if (!in_pos && !in_neg) {
        switch (policy) {
          case OolPolicy::drop:
            out.unassigned[signal_id][keyword] += count;
            continue;
          case OolPolicy::both:
            in_pos = in_neg = true;
            break;
          case OolPolicy::nearest_neighbor: {
            auto it = nn_cache.find(keyword);
            if (it == nn_cache.end())
              it = nn_cache.emplace(keyword,
                                    detail::nearest_neighbor_sentiment(keyword, lexicon, *table))
                       .first;
            std::tie(in_pos, in_neg) = it->second;
            if (!in_pos && !in_neg) {
              out.unassigned[signal_id][keyword] += count;  // not embeddable
              continue;
            }
            break;
          }
        }
      }
      if (in_pos) out.positive[signal_id][keyword] += count;
      if (in_neg) out.negative[signal_id][keyword] += count;
    }
  }
  return out;
}

}  // namespace hapticlang
