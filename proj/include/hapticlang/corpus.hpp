#pragma once

// Corpus ingestion: waveforms (mono PCM WAV or one-column CSV), free-form
// transcripts, and optional gold keyword annotations.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/keyword_extraction.hpp"

#include "json.hpp"

namespace hapticlang {

struct Signal {
  std::string id;
  std::vector<double> samples;  // dimensionless, approx [-1, 1]
  int sample_rate = 0;          // Hz

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

struct Transcript {
  std::string signal_id;
  std::string participant_id;
  std::string text;
};

struct GoldAnnotation {
  std::string signal_id;
  std::string participant_id;
  std::set<std::string> keywords;  // normalized, set semantics
};

struct Corpus {
  std::map<std::string, Signal> signals;  // keyed by id; iteration order = id order
  std::vector<Transcript> transcripts;
  std::vector<GoldAnnotation> gold;

  std::vector<std::string> signal_ids() const {
    std::vector<std::string> ids;
    ids.reserve(signals.size());
    for (const auto& [id, _] : signals) ids.push_back(id);
    return ids;
  }
};

namespace wav {

namespace detail {
inline uint32_t read_u32(const std::string& d, size_t off) {
  return static_cast<uint32_t>(static_cast<uint8_t>(d[off])) |
         (static_cast<uint32_t>(static_cast<uint8_t>(d[off + 1])) << 8) |
         (static_cast<uint32_t>(static_cast<uint8_t>(d[off + 2])) << 16) |
         (static_cast<uint32_t>(static_cast<uint8_t>(d[off + 3])) << 24);
}
inline uint16_t read_u16(const std::string& d, size_t off) {
  return static_cast<uint16_t>(static_cast<uint8_t>(d[off]) |
                               (static_cast<uint8_t>(d[off + 1]) << 8));
}
}  // namespace detail

/// Reads a mono PCM WAV file (8/16/24-bit). Integer samples are rescaled to
/// [-1, 1] by the full-scale divisor (e.g. 16-bit value 16384 -> 0.5).
inline Signal read_wav(const std::filesystem::path& path) {
  using detail::read_u16;
  using detail::read_u32;
  std::string d = fsio::read_file(path);
  auto fail = [&](const std::string& why) -> Error {
    return Error(path.string() + ": " + why);
  };
  if (d.size() < 12 || d.compare(0, 4, "RIFF") != 0 || d.compare(8, 4, "WAVE") != 0)
    throw fail("not a RIFF/WAVE file");

  int channels = 0, bits = 0, rate = 0;
  bool have_fmt = false;
  size_t data_off = 0, data_len = 0;
  size_t off = 12;
  while (off + 8 <= d.size()) {
    std::string chunk_id = d.substr(off, 4);
    uint32_t chunk_len = read_u32(d, off + 4);
    size_t body = off + 8;
    if (body + chunk_len > d.size()) throw fail("truncated chunk '" + chunk_id + "'");
    if (chunk_id == "fmt ") {
      if (chunk_len < 16) throw fail("fmt chunk too short");
      uint16_t format = read_u16(d, body);
      if (format != 1) throw fail("unsupported encoding (only PCM format 1)");
      channels = read_u16(d, body + 2);
      rate = static_cast<int>(read_u32(d, body + 4));
      bits = read_u16(d, body + 14);
      have_fmt = true;
    } else if (chunk_id == "data") {
      data_off = body;
      data_len = chunk_len;
    }
    off = body + chunk_len + (chunk_len % 2);  // chunks are word-aligned
  }
  if (!have_fmt) throw fail("missing fmt chunk");
  if (data_off == 0 && data_len == 0) throw fail("missing data chunk");
  if (channels != 1) throw fail("multi-channel WAV (" + std::to_string(channels) + " channels); only mono supported");
  if (rate < 1) throw fail("invalid sample rate");
  if (bits != 8 && bits != 16 && bits != 24) throw fail("unsupported bit depth " + std::to_string(bits));

  size_t bytes_per = static_cast<size_t>(bits) / 8;
  size_t count = data_len / bytes_per;
  if (count == 0) throw fail("empty signal");
  Signal sig;
  sig.sample_rate = rate;
  sig.samples.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    size_t p = data_off + i * bytes_per;
    double v = 0.0;
    if (bits == 8) {
      v = (static_cast<int>(static_cast<uint8_t>(d[p])) - 128) / 128.0;
    } else if (bits == 16) {
      auto raw = static_cast<int16_t>(read_u16(d, p));
      v = raw / 32768.0;
    } else {
      int32_t raw = static_cast<int32_t>(static_cast<uint8_t>(d[p])) |
                    (static_cast<int32_t>(static_cast<uint8_t>(d[p + 1])) << 8) |
                    (static_cast<int32_t>(static_cast<uint8_t>(d[p + 2])) << 16);
      if (raw & 0x800000) raw |= ~0xFFFFFF;  // sign-extend
      v = raw / 8388608.0;
    }
    sig.samples.push_back(v);
  }
  return sig;
}

/// Writes 16-bit mono PCM. Samples are clamped to [-1, 1] and quantized, so a
/// write/read round-trip agrees with the source within 1/32768.
inline void write_wav16(const std::filesystem::path& path, const std::vector<double>& samples,
                        int sample_rate) {
  std::string d;
  auto push_u32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) d += static_cast<char>((v >> (8 * i)) & 0xff);
  };
  auto push_u16 = [&](uint16_t v) {
    d += static_cast<char>(v & 0xff);
    d += static_cast<char>((v >> 8) & 0xff);
  };
  uint32_t data_len = static_cast<uint32_t>(samples.size() * 2);
  d += "RIFF";
  push_u32(36 + data_len);
  d += "WAVE";
  d += "fmt ";
  push_u32(16);
  push_u16(1);  // PCM
  push_u16(1);  // mono
  push_u32(static_cast<uint32_t>(sample_rate));
  push_u32(static_cast<uint32_t>(sample_rate) * 2);  // byte rate
  push_u16(2);                                       // block align
  push_u16(16);
  d += "data";
  push_u32(data_len);
  for (double x : samples) {
    double c = std::max(-1.0, std::min(1.0, x));
    // scale by 32768 (the decode divisor) so quantization error stays within
    // half a step; +1.0 saturates at 32767
    auto q = static_cast<int32_t>(std::lround(c * 32768.0));
    q = std::max<int32_t>(-32768, std::min<int32_t>(32767, q));
    push_u16(static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  fsio::write_file(path, d);
}

}  // namespace wav

namespace corpus {

/// Parses a one-column CSV of floats (values separated by newlines and/or
/// commas). Errors name the file and the 1-based value offset.
inline std::vector<double> read_signal_csv(const std::filesystem::path& path) {
  std::string content = fsio::read_file(path);
  std::vector<double> samples;
  long offset = 0;
  size_t start = 0;
  for (size_t i = 0; i <= content.size(); ++i) {
    if (i == content.size() || content[i] == ',' || content[i] == '\n') {
      std::string_view tok = text::trim(std::string_view(content).substr(start, i - start));
      start = i + 1;
      if (tok.empty()) continue;  // blank cells at line ends / trailing newline
      ++offset;
      auto v = text::parse_double(tok);
      if (!v)
        throw Error(path.string() + ": non-numeric cell '" + std::string(tok) +
                    "' at value offset " + std::to_string(offset));
      samples.push_back(*v);
    }
  }
  if (samples.empty()) throw Error(path.string() + ": empty signal");
  return samples;
}

inline void write_signal_csv(const std::filesystem::path& path, const std::vector<double>& samples) {
  std::string out;
  for (double v : samples) {
    out += format_exact(v);
    out += '\n';
  }
  fsio::write_file(path, out);
}

/// Loads signals from either a manifest file (JSON array of
/// {id?, file, sample_rate?}) or a directory of .wav files. The manifest's
/// sample_rate is mandatory for CSV entries; for WAV it must match the header
/// when present. id defaults to the file stem.
inline std::map<std::string, Signal> load_signals(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::map<std::string, Signal> out;

  auto add = [&](Signal sig, const fs::path& file) {
    if (sig.samples.empty()) throw Error(file.string() + ": empty signal");
    if (sig.sample_rate < 1) throw Error(file.string() + ": sample_rate must be >= 1");
    if (out.count(sig.id)) throw Error("duplicate signal id '" + sig.id + "' (" + file.string() + ")");
    out.emplace(sig.id, std::move(sig));
  };

  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::string ext = text::to_lower(file.extension().string());
      if (ext == ".wav") {
        Signal sig = wav::read_wav(file);
        sig.id = file.stem().string();
        add(std::move(sig), file);
      } else if (ext == ".csv") {
        throw Error(file.string() + ": CSV signals need a manifest entry with sample_rate");
      }
    }
    if (out.empty()) throw Error(path.string() + ": no signal files found");
    return out;
  }

  if (!fs::exists(path)) throw Error("signal manifest not found: " + path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(fsio::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": invalid manifest JSON: " + e.what());
  }
  if (!manifest.is_array()) throw Error(path.string() + ": manifest must be a JSON array");
  fs::path base = path.parent_path();
  for (const auto& entry : manifest) {
    if (!entry.is_object() || !entry.contains("file"))
      throw Error(path.string() + ": manifest entry missing 'file'");
    fs::path file = base / entry.at("file").get<std::string>();
    std::string id = entry.contains("id") ? entry.at("id").get<std::string>()
                                          : file.stem().string();
    std::string ext = text::to_lower(file.extension().string());
    Signal sig;
    if (ext == ".wav") {
      sig = wav::read_wav(file);
      if (entry.contains("sample_rate") && entry.at("sample_rate").get<int>() != sig.sample_rate)
        throw Error(file.string() + ": manifest sample_rate " +
                    std::to_string(entry.at("sample_rate").get<int>()) +
                    " disagrees with WAV header " + std::to_string(sig.sample_rate));
    } else if (ext == ".csv") {
      if (!entry.contains("sample_rate"))
        throw Error(file.string() + ": sample_rate is mandatory for CSV signals");
      sig.samples = read_signal_csv(file);
      sig.sample_rate = entry.at("sample_rate").get<int>();
    } else {
      throw Error(file.string() + ": unsupported signal format '" + ext + "'");
    }
    sig.id = id;
    add(std::move(sig), file);
  }
  if (out.empty()) throw Error(path.string() + ": manifest lists no signals");
  return out;
}

/// Loads line-delimited transcript records {signal_id, participant_id, text}.
/// Order-preserving; duplicate (signal, participant) pairs are allowed.
inline std::vector<Transcript> load_transcripts(const std::filesystem::path& path) {
  std::vector<Transcript> out;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_number) + ": invalid record: " + e.what());
    }
    for (const char* field : {"signal_id", "participant_id", "text"}) {
      if (!rec.contains(field) || !rec.at(field).is_string())
        throw Error(path.string() + ":" + std::to_string(line_number) +
                    ": missing field '" + field + "'");
    }
    Transcript t{rec.at("signal_id").get<std::string>(),
                 rec.at("participant_id").get<std::string>(),
                 rec.at("text").get<std::string>()};
    if (text::trim(t.text).empty())
      throw Error(path.string() + ":" + std::to_string(line_number) + ": empty text");
    out.push_back(std::move(t));
  });
  return out;
}

/// Loads gold keyword annotations; keywords are normalized on load and the
/// (signal, participant) key must be unique.
inline std::vector<GoldAnnotation> load_gold(const std::filesystem::path& path) {
  std::vector<GoldAnnotation> out;
  std::set<std::pair<std::string, std::string>> seen;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_number) + ": invalid record: " + e.what());
    }
    for (const char* field : {"signal_id", "participant_id", "keywords"}) {
      if (!rec.contains(field))
        throw Error(path.string() + ":" + std::to_string(line_number) +
                    ": missing field '" + field + "'");
    }
    GoldAnnotation g;
    g.signal_id = rec.at("signal_id").get<std::string>();
    g.participant_id = rec.at("participant_id").get<std::string>();
    if (!rec.at("keywords").is_array())
      throw Error(path.string() + ":" + std::to_string(line_number) + ": 'keywords' must be an array");
    for (const auto& k : rec.at("keywords")) {
      std::string norm = normalize_keyword(k.get<std::string>());
      if (!norm.empty()) g.keywords.insert(norm);
    }
    auto key = std::make_pair(g.signal_id, g.participant_id);
    if (!seen.insert(key).second)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": duplicate transcript key (" +
                  g.signal_id + ", " + g.participant_id + ")");
    out.push_back(std::move(g));
  });
  return out;
}

/// Assembles and validates a corpus; rejects transcripts whose signal_id has
/// no signal.
inline Corpus assemble(std::map<std::string, Signal> signals, std::vector<Transcript> transcripts,
                       std::vector<GoldAnnotation> gold = {}) {
  if (signals.empty()) throw Error("corpus has no signals");
  for (const auto& t : transcripts) {
    if (!signals.count(t.signal_id))
      throw Error("transcript references unknown signal '" + t.signal_id + "'");
  }
  for (const auto& g : gold) {
    if (!signals.count(g.signal_id))
      throw Error("gold annotation references unknown signal '" + g.signal_id + "'");
  }
  return Corpus{std::move(signals), std::move(transcripts), std::move(gold)};
}

inline Corpus load(const std::filesystem::path& signals_path, const std::filesystem::path& transcripts_path,
                   const std::optional<std::filesystem::path>& gold_path = std::nullopt) {
  auto signals = load_signals(signals_path);
  auto transcripts = load_transcripts(transcripts_path);
  std::vector<GoldAnnotation> gold;
  if (gold_path) gold = load_gold(*gold_path);
  return assemble(std::move(signals), std::move(transcripts), std::move(gold));
}

/// Persists a corpus as CSV signals + manifest + JSONL records. CSV samples
/// are written with round-trip-exact formatting, so save/load is lossless.
inline void save(const Corpus& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "signals");
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& [id, sig] : corpus.signals) {
    std::string file = "signals/" + id + ".csv";
    write_signal_csv(dir / file, sig.samples);
    manifest.push_back({{"id", id}, {"file", file}, {"sample_rate", sig.sample_rate}});
  }
  fsio::write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  std::string tl;
  for (const auto& t : corpus.transcripts) {
    nlohmann::json rec{{"signal_id", t.signal_id}, {"participant_id", t.participant_id}, {"text", t.text}};
    tl += rec.dump() + "\n";
  }
  fsio::write_file(dir / "transcripts.jsonl", tl);

  if (!corpus.gold.empty()) {
    std::string gl;
    for (const auto& g : corpus.gold) {
      nlohmann::json rec{{"signal_id", g.signal_id},
                         {"participant_id", g.participant_id},
                         {"keywords", std::vector<std::string>(g.keywords.begin(), g.keywords.end())}};
      gl += rec.dump() + "\n";
    }
    fsio::write_file(dir / "gold.jsonl", gl);
  }
}

inline Corpus load_saved(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::optional<fs::path> gold;
  if (fs::exists(dir / "gold.jsonl")) gold = dir / "gold.jsonl";
  return load(dir / "manifest.json", dir / "transcripts.jsonl", gold);
}

}  // namespace corpus

}  // namespace hapticlang
