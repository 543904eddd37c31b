#include <catch2/catch_amalgamated.hpp>

#include "hapticlang/sentiment_lexicon.hpp"
#include "../support/fixtures.hpp"

using namespace hapticlang;
using test_support::TempDir;

namespace {

std::filesystem::path write_lexicon(const TempDir& tmp, const std::string& content,
                                    const char* name = "nrc.txt") {
  auto p = tmp / name;
  fsio::write_file(p, content);
  return p;
}

const char* kBasicLexicon =
    "smooth\tpositive\t1\n"
    "smooth\tjoy\t1\n"
    "rough\tnegative\t1\n"
    "quiet\tpositive\t1\n"
    "quiet\tnegative\t1\n"
    "table\tpositive\t0\n";

}  // namespace

TEST_CASE("nrc parsing routes flags to the right sets") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp, kBasicLexicon));
  REQUIRE(lex.positive.count("smooth") == 1);
  REQUIRE(lex.negative.count("rough") == 1);
  REQUIRE(lex.positive.count("table") == 0);  // flag 0
  // both-polarity words live in both sets
  REQUIRE(lex.positive.count("quiet") == 1);
  REQUIRE(lex.negative.count("quiet") == 1);
}

TEST_CASE("nrc parsing rejects malformed rows with line numbers") {
  TempDir tmp("nrc");
  REQUIRE_THROWS_WITH(load_nrc(write_lexicon(tmp, "smooth\tpositive\t2\n", "bad1.txt")),
                      Catch::Matchers::ContainsSubstring("invalid flag '2'"));
  REQUIRE_THROWS_WITH(load_nrc(write_lexicon(tmp, "smooth positive 1\n", "bad2.txt")),
                      Catch::Matchers::ContainsSubstring(":1:"));
  REQUIRE_THROWS_WITH(load_nrc(write_lexicon(tmp, "x\tpositive\t1\n", "bad3.txt")),
                      Catch::Matchers::ContainsSubstring("no negative entries"));
}

TEST_CASE("split_sentiment routes lexicon members and honors drop policy") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp, kBasicLexicon));
  KeywordCounts input{{"s1", {{"smooth", 3}, {"rough", 1}, {"quiet", 2}, {"pulse count", 4}}}};
  auto out = split_sentiment(input, lex, OolPolicy::drop);
  REQUIRE(out.positive.at("s1").at("smooth") == 3);
  REQUIRE(out.negative.at("s1").at("rough") == 1);
  REQUIRE(out.positive.at("s1").at("quiet") == 2);
  REQUIRE(out.negative.at("s1").at("quiet") == 2);
  REQUIRE(out.unassigned.at("s1").at("pulse count") == 4);
  REQUIRE(out.positive.at("s1").count("pulse count") == 0);
}

TEST_CASE("split_sentiment both policy duplicates out-of-lexicon words") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp, kBasicLexicon));
  KeywordCounts input{{"s1", {{"pulse count", 2}}}};
  auto out = split_sentiment(input, lex, OolPolicy::both);
  REQUIRE(out.positive.at("s1").at("pulse count") == 2);
  REQUIRE(out.negative.at("s1").at("pulse count") == 2);
  REQUIRE(out.unassigned.empty());
}

TEST_CASE("conservation: drop policy preserves total occurrence counts") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp, kBasicLexicon));
  std::mt19937 rng(13);
  KeywordCounts input;
  const char* words[] = {"smooth", "rough", "quiet", "alien", "unseen", "pulse count"};
  long total = 0;
  for (int s = 0; s < 5; ++s)
    for (const char* w : words) {
      long c = static_cast<long>(rng() % 4);
      if (c == 0) continue;
      input["sig" + std::to_string(s)][w] = c;
      total += c;
    }
  auto out = split_sentiment(input, lex, OolPolicy::drop);
  long sum = 0;
  for (const auto* counts : {&out.positive, &out.negative, &out.unassigned})
    for (const auto& [sid, per_kw] : *counts)
      for (const auto& [kw, c] : per_kw) sum += c;
  // "quiet" carries both polarities and is intentionally double-counted
  long quiet_total = 0;
  for (const auto& [sid, per_kw] : input)
    if (auto it = per_kw.find("quiet"); it != per_kw.end()) quiet_total += it->second;
  REQUIRE(sum == total + quiet_total);
}

TEST_CASE("nearest-neighbor policy requires embeddings and votes by majority") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp,
                                    "good\tpositive\t1\n"
                                    "nice\tpositive\t1\n"
                                    "warm\tpositive\t1\n"
                                    "bad\tnegative\t1\n"
                                    "awful\tnegative\t1\n"
                                    "cold\tnegative\t1\n"));
  KeywordCounts input{{"s1", {{"great", 1}}}};
  REQUIRE_THROWS_WITH(split_sentiment(input, lex, OolPolicy::nearest_neighbor),
                      Catch::Matchers::ContainsSubstring("embedding table"));

  EmbeddingTable table;
  table.dimension = 2;
  table.entries = {{"good", {1.0, 0.1}},  {"nice", {1.0, -0.1}}, {"warm", {0.9, 0.2}},
                   {"bad", {-1.0, 0.1}},  {"awful", {-1.0, -0.1}}, {"cold", {-0.9, 0.2}},
                   {"great", {0.95, 0.0}}};
  auto out = split_sentiment(input, lex, OolPolicy::nearest_neighbor, &table);
  REQUIRE(out.positive.at("s1").at("great") == 1);
  REQUIRE(out.negative.empty());

  // un-embeddable words fall through to unassigned
  KeywordCounts missing{{"s1", {{"zzz", 1}}}};
  auto out2 = split_sentiment(missing, lex, OolPolicy::nearest_neighbor, &table);
  REQUIRE(out2.unassigned.at("s1").at("zzz") == 1);
}

TEST_CASE("split_sentiment is idempotent on its own output") {
  TempDir tmp("nrc");
  auto lex = load_nrc(write_lexicon(tmp, kBasicLexicon));
  KeywordCounts input{{"s1", {{"smooth", 2}, {"rough", 1}}}};
  auto once = split_sentiment(input, lex, OolPolicy::drop);
  auto twice = split_sentiment(once.positive, lex, OolPolicy::drop);
  REQUIRE(twice.positive == once.positive);
  REQUIRE(twice.negative.empty());
  REQUIRE(twice.unassigned.empty());
}
