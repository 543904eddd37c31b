#include <catch2/catch_amalgamated.hpp>

#include <unordered_set>

#include "hapticlang/keyword_extraction.hpp"
#include "../support/fixtures.hpp"

using namespace hapticlang;

TEST_CASE("normalize_keyword handles case, punctuation, whitespace, plurals") {
  REQUIRE(normalize_keyword("Smooth,") == "smooth");
  REQUIRE(normalize_keyword("vibrations") == "vibration");
  REQUIRE(normalize_keyword("pulse  count") == "pulse count");
  REQUIRE(normalize_keyword("  (Rough)  ") == "rough");
  REQUIRE(normalize_keyword("glasses") == "glass");
  REQUIRE(normalize_keyword("berries") == "berry");
  REQUIRE(normalize_keyword("boxes") == "box");
  // -ss / -us / -is endings and short words stay intact
  REQUIRE(normalize_keyword("grass") == "grass");
  REQUIRE(normalize_keyword("bus") == "bus");
  REQUIRE(normalize_keyword("gas") == "gas");
}

TEST_CASE("normalize_keyword strips -ing/-ed only with a known base") {
  std::unordered_set<std::string> vocab{"buzz", "excite", "tap", "vibrate"};
  auto known = [&](const std::string& w) { return vocab.count(w) > 0; };
  REQUIRE(normalize_keyword("buzzing", known) == "buzz");
  REQUIRE(normalize_keyword("excited", known) == "excite");
  REQUIRE(normalize_keyword("tapped", known) == "tap");
  REQUIRE(normalize_keyword("vibrating", known) == "vibrate");
  REQUIRE(normalize_keyword("boring", known) == "boring");  // no 'bor' base
  // without a base check the participles stay
  REQUIRE(normalize_keyword("buzzing") == "buzzing");
}

TEST_CASE("normalize_keyword is idempotent") {
  std::mt19937 rng(41);
  const char* samples[] = {"Smooth,",   "vibrations", "pulse  count", "buzzing",
                           "glasses",   "it's",       "(warm)",       "a-b-c",
                           "BERRIES!!", "so   soft"};
  for (const char* s : samples) {
    std::string once = normalize_keyword(s);
    REQUIRE(normalize_keyword(once) == once);
  }
}

TEST_CASE("rule extraction matches the documented example sentences") {
  auto kws = rule_based_extract("it feels quite smooth");
  REQUIRE(kws.size() == 1);
  REQUIRE(kws[0].normalized == "smooth");
  REQUIRE(kws[0].source == KeywordSource::rule);

  auto neg = rule_based_extract("I do not feel excited");
  std::vector<std::string> norm;
  for (auto& k : neg) norm.push_back(k.normalized);
  REQUIRE(norm == std::vector<std::string>{"not", "excited"});

  REQUIRE(rule_based_extract("   ").empty());
  REQUIRE(rule_based_extract("").empty());
}

TEST_CASE("rule extraction keeps duplicates in order") {
  auto kws = rule_based_extract("it feels rough. later it feels rough again.");
  std::vector<std::string> norm;
  for (auto& k : kws) norm.push_back(k.normalized);
  REQUIRE(norm == std::vector<std::string>{"rough", "rough"});
}

TEST_CASE("malformed pattern files are rejected with line numbers") {
  REQUIRE_THROWS_WITH(RulePatterns::parse("justaregex\n", "pat"),
                      Catch::Matchers::ContainsSubstring("pat:1"));
  REQUIRE_THROWS_WITH(RulePatterns::parse("\\b(x)\\b -> nosuchslot\n", "pat"),
                      Catch::Matchers::ContainsSubstring("unknown capture slot"));
  REQUIRE_THROWS_WITH(RulePatterns::parse("\\bnogroup\\b -> token\n", "pat"),
                      Catch::Matchers::ContainsSubstring("no capture group"));
  REQUIRE_THROWS_WITH(RulePatterns::parse("([a-z -> token\n", "pat"),
                      Catch::Matchers::ContainsSubstring("bad regex"));
}

TEST_CASE("shipped pattern file matches the embedded defaults") {
  auto shipped = fsio::read_file(std::filesystem::path(HAPTICLANG_SOURCE_DIR) / "data" /
                                 "rule_patterns.txt");
  REQUIRE(shipped == RulePatterns::default_text());
}

TEST_CASE("pos extraction finds adjectives and domain nouns") {
  auto kws = pos_based_extract("it feels quite smooth");
  REQUIRE(kws.size() == 1);
  REQUIRE(kws[0].normalized == "smooth");

  auto boring = pos_based_extract("I would say it's boring");
  REQUIRE(boring.size() == 1);
  REQUIRE(boring[0].normalized == "boring");

  REQUIRE(pos_based_extract("one two three").empty());

  auto full = pos_based_extract(
      "it feels quite smooth, like putting your finger in water. I do not feel excited.");
  std::vector<std::string> norm;
  for (auto& k : full) norm.push_back(k.normalized);
  REQUIRE(norm == std::vector<std::string>{"smooth", "water", "excited"});
}

TEST_CASE("pos extraction respects noun category configuration") {
  PosOptions no_nouns;
  no_nouns.include_nouns = false;
  REQUIRE(pos_based_extract("like water", no_nouns).empty());

  PosOptions sensory_only;
  sensory_only.noun_categories = {"sensory"};
  auto kws = pos_based_extract("a vibration like water", sensory_only);
  REQUIRE(kws.size() == 1);
  REQUIRE(kws[0].normalized == "vibration");
}

TEST_CASE("pos extraction strips plural and comparative endings") {
  auto plural = pos_based_extract("those vibrations");
  REQUIRE(plural.size() == 1);
  REQUIRE(plural[0].normalized == "vibration");

  auto comp = pos_based_extract("this one is smoother");
  REQUIRE(comp.size() == 1);
  REQUIRE(comp[0].normalized == "smooth");
}

TEST_CASE("scoring: the worked 2/3 example") {
  std::map<TranscriptKey, std::set<std::string>> pred{{{"s1", "p1"}, {"a", "b", "c"}}};
  std::vector<GoldAnnotation> gold{{"s1", "p1", {"b", "c", "d"}}};
  auto score = score_extraction(pred, gold);
  REQUIRE_THAT(score.precision, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE_THAT(score.recall, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE_THAT(score.f1, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE(score.total_true_positive == 2);
  REQUIRE(score.per_transcript.size() == 1);
}

TEST_CASE("scoring: perfect and degenerate cases") {
  std::map<TranscriptKey, std::set<std::string>> pred{{{"s1", "p1"}, {"x", "y"}}};
  std::vector<GoldAnnotation> gold{{"s1", "p1", {"x", "y"}}};
  auto perfect = score_extraction(pred, gold);
  REQUIRE(perfect.precision == 1.0);
  REQUIRE(perfect.recall == 1.0);
  REQUIRE(perfect.f1 == 1.0);

  std::map<TranscriptKey, std::set<std::string>> empty{{{"s1", "p1"}, {}}};
  auto zero = score_extraction(empty, gold);
  REQUIRE(zero.precision == 0.0);
  REQUIRE(zero.recall == 0.0);
  REQUIRE(zero.f1 == 0.0);
}

TEST_CASE("scoring: bounds and f1 <= max(P, R) on random inputs") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<TranscriptKey, std::set<std::string>> pred;
    std::vector<GoldAnnotation> gold;
    int transcripts = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < transcripts; ++t) {
      TranscriptKey key{"s" + std::to_string(t), "p1"};
      std::set<std::string> p, g;
      for (int w = 0; w < 6; ++w) {
        std::string word(1, static_cast<char>('a' + rng() % 8));
        if (rng() % 2) p.insert(word);
        if (rng() % 2) g.insert(word);
      }
      pred[key] = p;
      gold.push_back({key.first, key.second, g});
    }
    auto s = score_extraction(pred, gold);
    REQUIRE(s.precision >= 0.0);
    REQUIRE(s.precision <= 1.0);
    REQUIRE(s.recall >= 0.0);
    REQUIRE(s.recall <= 1.0);
    REQUIRE(s.f1 <= std::max(s.precision, s.recall) + 1e-12);
  }
}

TEST_CASE("scoring: missing prediction and unknown transcript are errors") {
  std::vector<GoldAnnotation> gold{{"s1", "p1", {"a"}}};
  std::map<TranscriptKey, std::set<std::string>> none;
  REQUIRE_THROWS_WITH(score_extraction(none, gold),
                      Catch::Matchers::ContainsSubstring("no prediction"));

  std::map<TranscriptKey, std::set<std::string>> extra{{{"s1", "p1"}, {"a"}},
                                                       {{"s9", "p9"}, {"b"}}};
  REQUIRE_THROWS_WITH(score_extraction(extra, gold),
                      Catch::Matchers::ContainsSubstring("unknown transcript"));
}
