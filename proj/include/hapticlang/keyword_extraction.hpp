#pragma once

// Keyword extraction backends (rule patterns, POS lexicon) plus the
// normalization and precision/recall scoring shared by all of them.

#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/detail/pos_lexicon_data.hpp"

namespace hapticlang {

enum class KeywordSource { rule, pos, llm, gold };

inline const char* to_string(KeywordSource s) {
  switch (s) {
    case KeywordSource::rule: return "rule";
    case KeywordSource::pos: return "pos";
    case KeywordSource::llm: return "llm";
    case KeywordSource::gold: return "gold";
  }
  return "?";
}

struct Keyword {
  std::string surface;     // as extracted
  std::string normalized;  // lowercase, trimmed, suffix-lemmatized
  KeywordSource source = KeywordSource::rule;
};

/// Predicate deciding whether a lemma candidate is a known base form
/// (typically membership in an embedding vocabulary).
using BaseCheck = std::function<bool(const std::string&)>;

namespace detail {

inline bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;  // leave UTF-8 continuation bytes alone
}

inline std::string strip_edge_punct(std::string s) {
  size_t b = 0, e = s.size();
  while (b < e && !is_word_byte(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && !is_word_byte(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Plural stripping: -ies -> -y, -es after sibilants, otherwise a single -s.
/// Short words and -ss/-us/-is endings are left alone.
inline std::string strip_plural(std::string w) {
  if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 4 && (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") ||
                       ends_with(w, "xes") || ends_with(w, "zes")))
    return w.substr(0, w.size() - 2);
  if (w.size() >= 4 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is") && !ends_with(w, "'s"))
    return w.substr(0, w.size() - 1);
  return w;
}

/// -ing/-ed stripping, applied only when the candidate base is known.
inline std::string strip_participle(const std::string& w, const BaseCheck& known) {
  auto try_bases = [&](std::string stem) -> std::string {
    if (known(stem)) return stem;
    if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      std::string undoubled = stem.substr(0, stem.size() - 1);
      if (known(undoubled)) return undoubled;
    }
    std::string with_e = stem + "e";
    if (known(with_e)) return with_e;
    return {};
  };
  if (w.size() >= 5 && ends_with(w, "ing")) {
    std::string r = try_bases(w.substr(0, w.size() - 3));
    if (!r.empty()) return r;
  }
  if (w.size() >= 4 && ends_with(w, "ed")) {
    std::string r = try_bases(w.substr(0, w.size() - 2));
    if (!r.empty()) return r;
  }
  return w;
}

}  // namespace detail

/// Canonical keyword form: lowercase, edge punctuation stripped, internal
/// whitespace collapsed, light suffix lemmatization per token. -ing/-ed are
/// only stripped when `known_base` confirms the base form; plural stripping
/// is unconditional. Idempotent.
inline std::string normalize_keyword(std::string_view surface, const BaseCheck& known_base = {}) {
  std::string lowered = text::to_lower(surface);
  std::string core = detail::strip_edge_punct(std::move(lowered));
  std::vector<std::string> tokens = text::split_ws(core);
  std::string out;
  for (auto& tok : tokens) {
    tok = detail::strip_plural(std::move(tok));
    if (known_base) tok = detail::strip_participle(tok, known_base);
    if (tok.empty()) continue;
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule-based extraction

/// One rule per line: "<trigger-regex> -> token". The first capture group of
/// the trigger becomes the keyword. '#' starts a comment line.
class RulePatterns {
 public:
  struct Rule {
    std::string trigger;
    std::regex re;
  };

  static RulePatterns parse(std::string_view content, const std::string& origin = "<patterns>") {
    RulePatterns out;
    long line_number = 0;
    size_t start = 0;
    std::string_view sv = content;
    while (start <= sv.size()) {
      size_t nl = sv.find('\n', start);
      std::string_view line = sv.substr(start, nl == std::string_view::npos ? sv.npos : nl - start);
      start = nl == std::string_view::npos ? sv.size() + 1 : nl + 1;
      ++line_number;
      std::string_view trimmed = text::trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      size_t sep = trimmed.rfind(" -> ");
      if (sep == std::string_view::npos)
        throw Error(origin + ":" + std::to_string(line_number) + ": missing ' -> ' separator");
      std::string trigger(text::trim(trimmed.substr(0, sep)));
      std::string slot(text::trim(trimmed.substr(sep + 4)));
      if (slot != "token")
        throw Error(origin + ":" + std::to_string(line_number) + ": unknown capture slot '" + slot + "'");
      Rule rule;
      rule.trigger = trigger;
      try {
        rule.re = std::regex(trigger, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        throw Error(origin + ":" + std::to_string(line_number) + ": bad regex: " + e.what());
      }
      if (rule.re.mark_count() < 1)
        throw Error(origin + ":" + std::to_string(line_number) + ": trigger has no capture group");
      out.rules_.push_back(std::move(rule));
    }
    if (out.rules_.empty()) throw Error(origin + ": no rules defined");
    return out;
  }

  static RulePatterns load(const std::filesystem::path& path) {
    return parse(fsio::read_file(path), path.string());
  }

  static const char* default_text() {
    // Kept in sync with data/rule_patterns.txt.
    return R"(# keyword trigger patterns, one per line: <trigger-regex> -> token
# the first capture group of the trigger becomes the keyword
\b(not|never)\b -> token
\b(?:feels?|felt|feeling|seems?|seemed|sounds?|sounded|looks?|looked)\s+(?:(?:quite|very|really|so|super|pretty|rather|extremely|too|somewhat|a\s+bit|a\s+little|kind\s+of|sort\s+of)\s+)*(?!(?:like|as)\b)([a-z][a-z'-]*) -> token
\b(?:it'?s|it\s+is|that'?s|that\s+is|this\s+is|they'?re|i'?m|was|were)\s+(?:(?:quite|very|really|so|super|pretty|rather|extremely|too|somewhat)\s+)*(?!(?:like|as)\b)([a-z][a-z'-]*) -> token
\blike\s+(?:(?:a|an|the|some|my|your)\s+)?([a-z][a-z'-]*) -> token
)";
  }

  static const RulePatterns& defaults() {
    static const RulePatterns instance = parse(default_text(), "<default patterns>");
    return instance;
  }

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

/// Applies every rule to the text; keywords are emitted in match-position
/// order (ties by rule order) with duplicates preserved.
inline std::vector<Keyword> rule_based_extract(std::string_view transcript_text,
                                               const RulePatterns& patterns = RulePatterns::defaults()) {
  std::string input(transcript_text);
  struct Hit {
    size_t pos;
    size_t rule_idx;
    std::string surface;
  };
  std::vector<Hit> hits;
  for (size_t r = 0; r < patterns.rules().size(); ++r) {
    const auto& rule = patterns.rules()[r];
    auto begin = std::sregex_iterator(input.begin(), input.end(), rule.re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      if (m.size() < 2 || !m[1].matched) continue;
      hits.push_back({static_cast<size_t>(m.position(1)), r, m[1].str()});
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.rule_idx < b.rule_idx;
  });
  std::vector<Keyword> out;
  for (auto& h : hits) {
    std::string norm = normalize_keyword(h.surface);
    if (norm.empty()) continue;
    out.push_back({std::move(h.surface), std::move(norm), KeywordSource::rule});
  }
  return out;
}

// ---------------------------------------------------------------------------
// POS-based extraction (single tokens only)

struct PosOptions {
  bool include_nouns = true;
  std::set<std::string> noun_categories = {"sensory", "object", "emotion"};
};

namespace detail {

inline const std::unordered_set<std::string>& pos_adjectives() {
  static const std::unordered_set<std::string> s(std::begin(kPosAdjectives), std::end(kPosAdjectives));
  return s;
}

inline const std::unordered_map<std::string, std::string>& pos_nouns() {
  static const std::unordered_map<std::string, std::string> s = [] {
    std::unordered_map<std::string, std::string> m;
    for (const auto& e : kPosNouns) m.emplace(e.word, e.category);
    return m;
  }();
  return s;
}

inline const std::unordered_set<std::string>& pos_stopwords() {
  static const std::unordered_set<std::string> s(std::begin(kPosStopwords), std::end(kPosStopwords));
  return s;
}

inline bool adjective_by_suffix(const std::string& w) {
  if (w.size() < 5) return false;
  for (const char* suf : {"ous", "ful", "ive", "less", "ish", "able", "ible"})
    if (ends_with(w, suf)) return true;
  return false;
}

/// Strips comparative/superlative endings when the base is a known adjective.
inline std::string strip_comparative(const std::string& w) {
  auto known = [](const std::string& b) { return pos_adjectives().count(b) > 0; };
  for (std::string_view suf : {std::string_view("est"), std::string_view("er")}) {
    if (w.size() > suf.size() + 2 && ends_with(w, suf)) {
      std::string stem = w.substr(0, w.size() - suf.size());
      if (known(stem)) return stem;
      if (known(stem + "e")) return stem + "e";
      if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
          known(stem.substr(0, stem.size() - 1)))
        return stem.substr(0, stem.size() - 1);
      if (stem.size() >= 2 && stem.back() == 'i' && known(stem.substr(0, stem.size() - 1) + "y"))
        return stem.substr(0, stem.size() - 1) + "y";
    }
  }
  return {};
}

inline std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u) || u >= 0x80 || (!cur.empty() && (c == '\'' || c == '-'))) {
      cur += c;
    } else if (!cur.empty()) {
      while (!cur.empty() && (cur.back() == '\'' || cur.back() == '-')) cur.pop_back();
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    }
  }
  while (!cur.empty() && (cur.back() == '\'' || cur.back() == '-')) cur.pop_back();
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace detail

/// Single-token adjectives plus nouns from the enabled categories, tagged via
/// the embedded lexicon with a suffix-rule fallback for unknown adjectives.
inline std::vector<Keyword> pos_based_extract(std::string_view transcript_text,
                                              const PosOptions& options = {}) {
  std::vector<Keyword> out;
  for (const std::string& raw : detail::word_tokens(text::to_lower(transcript_text))) {
    if (detail::pos_stopwords().count(raw)) continue;
    std::string norm = normalize_keyword(raw);
    if (norm.empty()) continue;
    auto emit = [&](std::string normalized) {
      out.push_back({raw, std::move(normalized), KeywordSource::pos});
    };
    if (detail::pos_adjectives().count(norm)) {
      emit(norm);
      continue;
    }
    if (options.include_nouns) {
      auto it = detail::pos_nouns().find(norm);
      if (it != detail::pos_nouns().end() && options.noun_categories.count(it->second)) {
        emit(norm);
        continue;
      }
    }
    std::string base = detail::strip_comparative(norm);
    if (!base.empty()) {
      emit(base);
      continue;
    }
    if (detail::adjective_by_suffix(norm)) emit(norm);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scoring against gold annotations

struct ExtractionScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long total_true_positive = 0;
  long total_predicted = 0;
  long total_gold = 0;
  struct PerTranscript {
    std::string signal_id;
    std::string participant_id;
    long true_positive = 0;
    long predicted = 0;
    long gold = 0;
  };
  std::vector<PerTranscript> per_transcript;
};

using TranscriptKey = std::pair<std::string, std::string>;  // (signal_id, participant_id)

/// Micro-averaged exact match on normalized forms with per-transcript set
/// semantics: P = sum(tp)/sum(|pred|), R = sum(tp)/sum(|gold|).
template <typename GoldRange>
ExtractionScore score_extraction(const std::map<TranscriptKey, std::set<std::string>>& predicted,
                                 const GoldRange& gold) {
  ExtractionScore score;
  std::set<TranscriptKey> gold_keys;
  for (const auto& g : gold) {
    TranscriptKey key{g.signal_id, g.participant_id};
    gold_keys.insert(key);
    auto it = predicted.find(key);
    if (it == predicted.end())
      throw Error("no prediction for transcript (" + g.signal_id + ", " + g.participant_id + ")");
    const std::set<std::string>& pred = it->second;
    long tp = 0;
    for (const auto& k : pred)
      if (g.keywords.count(k)) ++tp;
    score.total_true_positive += tp;
    score.total_predicted += static_cast<long>(pred.size());
    score.total_gold += static_cast<long>(g.keywords.size());
    score.per_transcript.push_back({g.signal_id, g.participant_id, tp,
                                    static_cast<long>(pred.size()),
                                    static_cast<long>(g.keywords.size())});
  }
  for (const auto& [key, _] : predicted) {
    if (!gold_keys.count(key))
      throw Error("prediction references unknown transcript (" + key.first + ", " + key.second + ")");
  }
  score.precision = score.total_predicted > 0
                        ? static_cast<double>(score.total_true_positive) / score.total_predicted
                        : 0.0;
  score.recall = score.total_gold > 0
                     ? static_cast<double>(score.total_true_positive) / score.total_gold
                     : 0.0;
  score.f1 = (score.precision + score.recall) > 0.0
                 ? 2.0 * score.precision * score.recall / (score.precision + score.recall)
                 : 0.0;
  return score;
}

}  // namespace hapticlang
