#include <catch2/catch_amalgamated.hpp>

#include "hapticlang/corpus.hpp"
#include "../support/fixtures.hpp"

using namespace hapticlang;
using test_support::TempDir;

TEST_CASE("csv signal parses commas and newlines") {
  TempDir tmp("corpus");
  fsio::write_file(tmp / "a.csv", "0.0,0.5,-0.5");
  auto samples = corpus::read_signal_csv(tmp / "a.csv");
  REQUIRE(samples == std::vector<double>{0.0, 0.5, -0.5});

  fsio::write_file(tmp / "b.csv", "0.25\n-0.25\n1.0\n");
  REQUIRE(corpus::read_signal_csv(tmp / "b.csv") == std::vector<double>{0.25, -0.25, 1.0});
}

TEST_CASE("empty csv signal is an error") {
  TempDir tmp("corpus");
  fsio::write_file(tmp / "empty.csv", "");
  REQUIRE_THROWS_WITH(corpus::read_signal_csv(tmp / "empty.csv"),
                      Catch::Matchers::ContainsSubstring("empty signal"));
}

TEST_CASE("non-numeric csv cell names file and offset") {
  TempDir tmp("corpus");
  fsio::write_file(tmp / "bad.csv", "0.0,oops,1.0");
  try {
    corpus::read_signal_csv(tmp / "bad.csv");
    FAIL("expected error");
  } catch (const Error& e) {
    std::string msg = e.what();
    REQUIRE(msg.find("bad.csv") != std::string::npos);
    REQUIRE(msg.find("oops") != std::string::npos);
    REQUIRE(msg.find("offset 2") != std::string::npos);
  }
}

TEST_CASE("16-bit wav sample scaling") {
  TempDir tmp("corpus");
  // value 16384 must decode to exactly 0.5 (16384/32768)
  wav::write_wav16(tmp / "half.wav", {16384.0 / 32767.0, 0.0}, 8000);
  // bypass the quantizer: craft the sample directly
  Signal direct;
  {
    std::vector<double> payload = {0.5, -0.5, 0.0};
    wav::write_wav16(tmp / "x.wav", payload, 8000);
    direct = wav::read_wav(tmp / "x.wav");
  }
  REQUIRE(direct.sample_rate == 8000);
  REQUIRE(direct.samples.size() == 3);
  REQUIRE_THAT(direct.samples[0], Catch::Matchers::WithinAbs(0.5, 1.0 / 32768.0));
  REQUIRE_THAT(direct.samples[1], Catch::Matchers::WithinAbs(-0.5, 1.0 / 32768.0));
  REQUIRE(direct.samples[2] == 0.0);
}

TEST_CASE("wav and csv encodings agree within one quantization step") {
  TempDir tmp("corpus");
  std::mt19937 rng(7);
  auto samples = test_support::random_samples(rng, 500);
  wav::write_wav16(tmp / "w.wav", samples, 4000);
  corpus::write_signal_csv(tmp / "w.csv", samples);
  auto from_wav = wav::read_wav(tmp / "w.wav").samples;
  auto from_csv = corpus::read_signal_csv(tmp / "w.csv");
  REQUIRE(from_wav.size() == from_csv.size());
  for (size_t i = 0; i < from_wav.size(); ++i)
    REQUIRE_THAT(from_wav[i], Catch::Matchers::WithinAbs(from_csv[i], 1.0 / 32768.0));
}

TEST_CASE("multi-channel wav is rejected") {
  TempDir tmp("corpus");
  // hand-build a stereo header
  std::string d;
  auto u32 = [&](uint32_t v) { for (int i = 0; i < 4; ++i) d += char((v >> (8 * i)) & 0xff); };
  auto u16 = [&](uint16_t v) { d += char(v & 0xff); d += char((v >> 8) & 0xff); };
  d += "RIFF"; u32(36 + 4); d += "WAVE";
  d += "fmt "; u32(16); u16(1); u16(2); u32(8000); u32(32000); u16(4); u16(16);
  d += "data"; u32(4); u16(0); u16(0);
  fsio::write_file(tmp / "stereo.wav", d);
  REQUIRE_THROWS_WITH(wav::read_wav(tmp / "stereo.wav"),
                      Catch::Matchers::ContainsSubstring("multi-channel"));
}

TEST_CASE("manifest loading: csv requires sample_rate, wav header wins") {
  TempDir tmp("corpus");
  std::filesystem::create_directories(tmp / "sig");
  corpus::write_signal_csv(tmp / "sig" / "s1.csv", {0.0, 0.5, -0.5});
  wav::write_wav16(tmp / "sig" / "s2.wav", {0.1, -0.1}, 8000);

  fsio::write_file(tmp / "manifest.json",
                   R"([{"id":"s1","file":"sig/s1.csv","sample_rate":1000},
                       {"id":"s2","file":"sig/s2.wav"}])");
  auto signals = corpus::load_signals(tmp / "manifest.json");
  REQUIRE(signals.size() == 2);
  REQUIRE(signals.at("s1").sample_rate == 1000);
  REQUIRE(signals.at("s1").samples == std::vector<double>{0.0, 0.5, -0.5});
  REQUIRE(signals.at("s2").sample_rate == 8000);

  fsio::write_file(tmp / "norate.json", R"([{"id":"s1","file":"sig/s1.csv"}])");
  REQUIRE_THROWS_WITH(corpus::load_signals(tmp / "norate.json"),
                      Catch::Matchers::ContainsSubstring("sample_rate is mandatory"));

  fsio::write_file(tmp / "badrate.json", R"([{"id":"s2","file":"sig/s2.wav","sample_rate":44100}])");
  REQUIRE_THROWS_WITH(corpus::load_signals(tmp / "badrate.json"),
                      Catch::Matchers::ContainsSubstring("disagrees"));
}

TEST_CASE("transcript loading preserves order and validates fields") {
  TempDir tmp("corpus");
  fsio::write_file(tmp / "t.jsonl",
                   R"({"signal_id":"s01","participant_id":"p03","text":"it feels quite smooth"}
{"signal_id":"s01","participant_id":"p03","text":"another turn"}
)");
  auto ts = corpus::load_transcripts(tmp / "t.jsonl");
  REQUIRE(ts.size() == 2);
  REQUIRE(ts[0].signal_id == "s01");
  REQUIRE(ts[0].participant_id == "p03");
  REQUIRE(ts[0].text == "it feels quite smooth");

  fsio::write_file(tmp / "missing.jsonl", R"({"signal_id":"s01","participant_id":"p03"})");
  try {
    corpus::load_transcripts(tmp / "missing.jsonl");
    FAIL("expected error");
  } catch (const Error& e) {
    REQUIRE(std::string(e.what()).find(":1:") != std::string::npos);
    REQUIRE(std::string(e.what()).find("text") != std::string::npos);
  }
}

TEST_CASE("12 participants x 16 signals load as 192 transcripts") {
  TempDir tmp("corpus");
  std::string lines;
  for (int p = 1; p <= 12; ++p)
    for (int s = 1; s <= 16; ++s)
      lines += nlohmann::json{{"signal_id", "s" + std::to_string(s)},
                              {"participant_id", "p" + std::to_string(p)},
                              {"text", "feels fine"}}
                   .dump() +
               "\n";
  fsio::write_file(tmp / "t.jsonl", lines);
  REQUIRE(corpus::load_transcripts(tmp / "t.jsonl").size() == 192);
}

TEST_CASE("gold annotations normalize keywords and reject duplicate keys") {
  TempDir tmp("corpus");
  fsio::write_file(tmp / "g.jsonl",
                   R"({"signal_id":"s1","participant_id":"p1","keywords":["Smooth,","vibrations"]}
)");
  auto gold = corpus::load_gold(tmp / "g.jsonl");
  REQUIRE(gold.size() == 1);
  REQUIRE(gold[0].keywords == std::set<std::string>{"smooth", "vibration"});

  fsio::write_file(tmp / "dup.jsonl",
                   R"({"signal_id":"s1","participant_id":"p1","keywords":["a"]}
{"signal_id":"s1","participant_id":"p1","keywords":["b"]}
)");
  REQUIRE_THROWS_WITH(corpus::load_gold(tmp / "dup.jsonl"),
                      Catch::Matchers::ContainsSubstring("duplicate transcript key"));
}

TEST_CASE("corpus assembly rejects dangling signal ids") {
  std::map<std::string, Signal> signals;
  signals.emplace("s1", test_support::make_signal("s1", {0.1, 0.2}));
  std::vector<Transcript> ts{{"s2", "p1", "feels odd"}};
  REQUIRE_THROWS_WITH(corpus::assemble(signals, ts),
                      Catch::Matchers::ContainsSubstring("unknown signal 's2'"));
}

TEST_CASE("corpus save/load round-trips exactly") {
  TempDir tmp("corpus");
  std::mt19937 rng(11);
  std::map<std::string, Signal> signals;
  signals.emplace("sa", test_support::make_signal("sa", test_support::random_samples(rng, 64), 2000));
  signals.emplace("sb", test_support::make_signal("sb", test_support::random_samples(rng, 32), 750));
  std::vector<Transcript> ts{{"sa", "p1", "it feels quite smooth"},
                             {"sb", "p2", "like sandpaper"},
                             {"sa", "p1", "a second turn"}};
  std::vector<GoldAnnotation> gold{{"sa", "p1", {"smooth"}}};
  Corpus original = corpus::assemble(signals, ts, gold);

  corpus::save(original, tmp.path());
  Corpus reloaded = corpus::load_saved(tmp.path());

  REQUIRE(reloaded.signals.size() == original.signals.size());
  for (const auto& [id, sig] : original.signals) {
    REQUIRE(reloaded.signals.at(id).sample_rate == sig.sample_rate);
    REQUIRE(reloaded.signals.at(id).samples == sig.samples);  // bit-exact
  }
  REQUIRE(reloaded.transcripts.size() == original.transcripts.size());
  for (size_t i = 0; i < original.transcripts.size(); ++i) {
    REQUIRE(reloaded.transcripts[i].signal_id == original.transcripts[i].signal_id);
    REQUIRE(reloaded.transcripts[i].participant_id == original.transcripts[i].participant_id);
    REQUIRE(reloaded.transcripts[i].text == original.transcripts[i].text);
  }
  REQUIRE(reloaded.gold.size() == 1);
  REQUIRE(reloaded.gold[0].keywords == original.gold[0].keywords);
}
