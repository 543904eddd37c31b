#pragma once

// Synthetic corpora for benchmarks and end-to-end checks: burst waveforms
// with known pulse counts and transcripts whose keyword frequencies track a
// chosen signal feature.

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/corpus.hpp"

#include "json.hpp"

namespace hapticlang::synthetic {

/// `pulses` sine bursts of `burst_seconds` separated by `gap_seconds` of
/// silence, padded with silence on both ends.
inline Signal burst_signal(const std::string& id, int pulses, double amplitude, double burst_hz,
                           int sample_rate = 8000, double burst_seconds = 0.05,
                           double gap_seconds = 0.1, double pad_seconds = 0.1) {
  Signal sig;
  sig.id = id;
  sig.sample_rate = sample_rate;
  auto silence = [&](double seconds) {
    sig.samples.insert(sig.samples.end(),
                       static_cast<size_t>(std::lround(seconds * sample_rate)), 0.0);
  };
  silence(pad_seconds);
  const auto burst_len = static_cast<size_t>(std::lround(burst_seconds * sample_rate));
  for (int p = 0; p < pulses; ++p) {
    if (p > 0) silence(gap_seconds);
    for (size_t i = 0; i < burst_len; ++i) {
      double t = static_cast<double>(i) / sample_rate;
      sig.samples.push_back(amplitude * std::sin(2.0 * std::numbers::pi * burst_hz * t));
    }
  }
  silence(pad_seconds);
  return sig;
}

inline Signal sine_signal(const std::string& id, double hz, double amplitude, int sample_rate,
                          double duration_seconds) {
  Signal sig;
  sig.id = id;
  sig.sample_rate = sample_rate;
  const auto n = static_cast<size_t>(std::lround(duration_seconds * sample_rate));
  sig.samples.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / sample_rate;
    sig.samples.push_back(amplitude * std::sin(2.0 * std::numbers::pi * hz * t));
  }
  return sig;
}

struct GroundingFixture {
  std::filesystem::path root;
  std::filesystem::path config_path;
  std::filesystem::path output_dir;
  std::vector<std::string> target_group;  // keyword group tied to pulse count
};

/// Writes a 32-signal corpus whose pulse counts span 1..16 (twice), with
/// transcripts in which the "urgent" keyword group occurs pulse_count (+/-1)
/// times per signal. Distractor keyword groups vary on unrelated schedules.
/// Produces a complete, self-contained pipeline config (rule extractor).
inline GroundingFixture write_grounding_fixture(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  GroundingFixture fixture;
  fixture.root = dir;
  fixture.config_path = dir / "config.json";
  fixture.output_dir = dir / "out";
  fixture.target_group = {"urgent", "alert", "important"};

  const std::vector<std::string> calm_group = {"calm", "gentle", "soothing"};
  const std::vector<std::string> musical_group = {"musical", "creative"};
  const std::vector<std::string> annoying_group = {"annoying", "irritating"};
  const std::vector<std::string> boring_group = {"boring", "dull"};

  auto sentence_for = [](const std::string& word) -> std::string {
    if (word == "alert") return "It feels like an alert.";
    return "It feels " + word + ".";
  };

  fs::create_directories(dir / "signals");
  nlohmann::json manifest = nlohmann::json::array();
  std::string transcripts, gold;

  for (int i = 0; i < 32; ++i) {
    char idbuf[8];
    std::snprintf(idbuf, sizeof(idbuf), "s%02d", i + 1);
    std::string id = idbuf;
    int pulses = 1 + (i % 16);
    double amplitude = 0.4 + 0.6 * ((i * 13) % 32) / 31.0;
    double hz = 200.0 + 40.0 * ((i * 7) % 10);
    Signal sig = burst_signal(id, pulses, amplitude, hz);

    // Half the corpus as WAV, half as CSV, to exercise both loaders.
    if (i % 2 == 0) {
      std::string file = id + ".wav";
      wav::write_wav16(dir / "signals" / file, sig.samples, sig.sample_rate);
      manifest.push_back({{"id", id}, {"file", file}});
    } else {
      std::string file = id + ".csv";
      corpus::write_signal_csv(dir / "signals" / file, sig.samples);
      manifest.push_back({{"id", id}, {"file", file}, {"sample_rate", sig.sample_rate}});
    }

    // Target group occurrences track pulse count with bounded +/-1 noise.
    int target_n = std::max(0, pulses + static_cast<int>((i * 7) % 3) - 1);
    std::vector<std::string> sentences;
    std::set<std::string> words_used;
    auto add = [&](const std::vector<std::string>& group, int count) {
      for (int j = 0; j < count; ++j) {
        const std::string& w = group[static_cast<size_t>(j) % group.size()];
        sentences.push_back(sentence_for(w));
        words_used.insert(w);
      }
    };
    add(fixture.target_group, target_n);
    add(calm_group, 1 + static_cast<int>((i * 11) % 4));
    add(musical_group, 1 + static_cast<int>((i * 5) % 3));
    add(annoying_group, 1 + (i % 2));
    add(boring_group, 1 + static_cast<int>((i * 3) % 4));
    sentences.push_back("I moved my finger across the screen.");

    // Two participants describe each signal; turns are merged per signal at
    // count time downstream.
    char pa[8], pb[8];
    std::snprintf(pa, sizeof(pa), "p%02d", (i % 12) + 1);
    std::snprintf(pb, sizeof(pb), "p%02d", ((i + 5) % 12) + 1);
    size_t half = sentences.size() / 2;
    std::string text_a, text_b;
    std::set<std::string> words_a, words_b;
    for (size_t s = 0; s < sentences.size(); ++s) {
      auto& target = s < half ? text_a : text_b;
      if (!target.empty()) target += ' ';
      target += sentences[s];
    }
    auto record_words = [&](const std::string& t, std::set<std::string>& out) {
      for (const auto& w : words_used)
        if (t.find(w) != std::string::npos) out.insert(w);
    };
    record_words(text_a, words_a);
    record_words(text_b, words_b);
    if (text_a.empty()) text_a = "I moved my finger across the screen.";
    if (text_b.empty()) text_b = "I moved my finger across the screen.";

    for (const auto& [pid, txt, words] :
         {std::tuple(std::string(pa), text_a, words_a), std::tuple(std::string(pb), text_b, words_b)}) {
      transcripts += nlohmann::json{{"signal_id", id}, {"participant_id", pid}, {"text", txt}}.dump() + "\n";
      gold += nlohmann::json{{"signal_id", id},
                             {"participant_id", pid},
                             {"keywords", std::vector<std::string>(words.begin(), words.end())}}
                  .dump() +
              "\n";
    }
  }
  fsio::write_file(dir / "signals" / "manifest.json", manifest.dump(2) + "\n");
  fsio::write_file(dir / "transcripts.jsonl", transcripts);
  fsio::write_file(dir / "gold.jsonl", gold);

  // NRC-format lexicon fixture covering the fixture vocabulary.
  std::string lexicon;
  auto lex_rows = [&](const std::vector<std::string>& group, const char* affect) {
    for (const auto& w : group) {
      lexicon += w + std::string("\t") + affect + "\t1\n";
      lexicon += w + std::string("\tanticipation\t0\n");
    }
  };
  lex_rows(fixture.target_group, "positive");
  lex_rows(calm_group, "positive");
  lex_rows(musical_group, "positive");
  lex_rows(annoying_group, "negative");
  lex_rows(boring_group, "negative");
  lexicon += "table\tpositive\t0\n";
  fsio::write_file(dir / "lexicon.txt", lexicon);

  // Text-format embeddings: each group sits in its own orthant with small
  // per-word offsets so no pairwise distance ties occur.
  std::string embeddings;
  int group_axis = 0;
  const std::vector<std::string>* groups[] = {&fixture.target_group, &calm_group, &musical_group,
                                              &annoying_group, &boring_group};
  for (const auto* group : groups) {
    int word_idx = 0;
    for (const auto& w : *group) {
      std::vector<double> v(8, 0.0);
      v[static_cast<size_t>(group_axis)] = 1.0;
      v[5 + static_cast<size_t>(word_idx % 3)] = 0.03 * (word_idx + 1);
      embeddings += w;
      for (double x : v) {
        embeddings += ' ';
        embeddings += format_exact(x);
      }
      embeddings += '\n';
      ++word_idx;
    }
    ++group_axis;
  }
  fsio::write_file(dir / "embeddings.txt", embeddings);

  nlohmann::json config{
      {"corpus",
       {{"signals", "signals/manifest.json"},
        {"transcripts", "transcripts.jsonl"},
        {"gold", "gold.jsonl"}}},
      {"extractor", {{"method", "rule"}}},
      {"sentiment", {{"lexicon", "lexicon.txt"}, {"policy", "drop"}}},
      {"embeddings", {{"path", "embeddings.txt"}, {"format", "text"}}},
      {"clustering",
       {{"linkage", "average"}, {"k_positive", 3}, {"k_negative", 2}, {"k_min", 2}, {"k_max", 6}}},
      {"features",
       {{"threshold_ratio", 0.1}, {"min_gap_seconds", 0.01}, {"frame", 1024}, {"hop", 512}}},
      {"output_dir", "out"}};
  fsio::write_file(fixture.config_path, config.dump(2) + "\n");
  return fixture;
}

}  // namespace hapticlang::synthetic
