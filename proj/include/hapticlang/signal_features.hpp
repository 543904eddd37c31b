#pragma once

// The seven statistical waveform features and their corpus-level matrix.

#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/corpus.hpp"

#include "json.hpp"

namespace hapticlang {

struct FeatureParams {
  double threshold_ratio = 0.1;   // pulse threshold, relative to max |sample|
  double min_gap_seconds = 0.01;  // sub-threshold gaps shorter than this merge pulses
  int frame = 1024;               // analysis frame (samples), power of two
  int hop = 512;                  // analysis hop (samples)
};

inline constexpr std::array<const char*, 7> kFeatureNames = {
    "mean_amplitude",     "rms",           "pulse_count", "std_pulse_distance",
    "zero_count",         "mean_onset_strength", "spectral_centroid"};

inline constexpr std::array<const char*, 7> kFeatureDisplayNames = {
    "Mean Amplitude",      "RMS",                 "Pulse Count", "Std Pulse Distance",
    "Zero Count",          "Mean Onset Strength", "Spectral Centroid"};

struct FeatureVector {
  double mean_amplitude = 0.0;
  double rms = 0.0;
  long pulse_count = 0;
  double std_pulse_distance = 0.0;  // seconds
  long zero_count = 0;
  double mean_onset_strength = 0.0;
  double spectral_centroid = 0.0;  // Hz

  std::array<double, 7> as_array() const {
    return {mean_amplitude,
            rms,
            static_cast<double>(pulse_count),
            std_pulse_distance,
            static_cast<double>(zero_count),
            mean_onset_strength,
            spectral_centroid};
  }
};

struct FeatureMatrix {
  std::vector<std::string> signal_ids;          // row order
  std::vector<std::array<double, 7>> values;    // |signals| x 7
  bool normalized = false;
  std::vector<int> constant_columns;            // warning: zero-variance columns
};

struct PulseSpan {
  double start_seconds = 0.0;
  double end_seconds = 0.0;
};

namespace detail {

/// In-place iterative radix-2 FFT; size must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        auto u = a[i + k];
        auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= step;
      }
    }
  }
}

inline double hann(int i, int frame) {
  return 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / frame);
}

/// Frame start offsets: full frames only, except that signals shorter than
/// one frame are zero-padded to a single frame.
inline std::vector<size_t> frame_starts(size_t n, int frame, int hop) {
  std::vector<size_t> starts;
  if (n < static_cast<size_t>(frame)) {
    starts.push_back(0);
    return starts;
  }
  for (size_t s = 0; s + frame <= n; s += static_cast<size_t>(hop)) starts.push_back(s);
  return starts;
}

inline double population_std(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

}  // namespace detail

/// Arithmetic mean of |samples| (rectified mean).
inline double mean_amplitude(const Signal& sig) {
  if (sig.samples.empty()) throw Error("mean_amplitude: empty signal");
  double acc = 0.0;
  for (double x : sig.samples) acc += std::fabs(x);
  return acc / static_cast<double>(sig.samples.size());
}

inline double rms(const Signal& sig) {
  if (sig.samples.empty()) throw Error("rms: empty signal");
  double acc = 0.0;
  for (double x : sig.samples) acc += x * x;
  return std::sqrt(acc / static_cast<double>(sig.samples.size()));
}

namespace detail {

struct PulseRun {
  size_t begin;
  size_t end;  // exclusive, in samples
};

inline std::vector<PulseRun> pulse_runs(const Signal& sig, double threshold_ratio,
                                        double min_gap_seconds) {
  if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0))
    throw Error("detect_pulses: threshold_ratio must be in (0, 1)");
  if (sig.samples.empty()) throw Error("detect_pulses: empty signal");
  double peak = 0.0;
  for (double x : sig.samples) peak = std::max(peak, std::fabs(x));
  if (peak == 0.0) return {};
  const double threshold = threshold_ratio * peak;
  const double rate = static_cast<double>(sig.sample_rate);

  std::vector<PulseRun> runs;
  bool in_run = false;
  size_t begin = 0;
  for (size_t i = 0; i < sig.samples.size(); ++i) {
    bool above = std::fabs(sig.samples[i]) >= threshold;
    if (above && !in_run) {
      in_run = true;
      begin = i;
    } else if (!above && in_run) {
      in_run = false;
      runs.push_back({begin, i});
    }
  }
  if (in_run) runs.push_back({begin, sig.samples.size()});

  std::vector<PulseRun> merged;
  for (const auto& r : runs) {
    if (!merged.empty() &&
        static_cast<double>(r.begin - merged.back().end) / rate < min_gap_seconds) {
      merged.back().end = r.end;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace detail

/// Maximal runs where |sample| >= threshold_ratio * max|sample|, with runs
/// separated by sub-threshold gaps shorter than min_gap merged together.
/// An all-zero signal has no pulses.
inline std::vector<PulseSpan> detect_pulses(const Signal& sig, double threshold_ratio = 0.1,
                                            double min_gap_seconds = 0.01) {
  auto runs = detail::pulse_runs(sig, threshold_ratio, min_gap_seconds);
  const double rate = static_cast<double>(sig.sample_rate);
  std::vector<PulseSpan> spans;
  spans.reserve(runs.size());
  for (const auto& r : runs)
    spans.push_back({static_cast<double>(r.begin) / rate, static_cast<double>(r.end) / rate});
  return spans;
}

inline long pulse_count(const Signal& sig, double threshold_ratio = 0.1,
                        double min_gap_seconds = 0.01) {
  return static_cast<long>(detect_pulses(sig, threshold_ratio, min_gap_seconds).size());
}

/// Population standard deviation of the silence durations between consecutive
/// pulses; 0 when there are fewer than two pulses.
inline double std_pulse_distance(const Signal& sig, double threshold_ratio = 0.1,
                                 double min_gap_seconds = 0.01) {
  auto runs = detail::pulse_runs(sig, threshold_ratio, min_gap_seconds);
  if (runs.size() < 2) return 0.0;
  // gaps in whole samples first, so equal spacings give an exact 0
  std::vector<double> gaps;
  gaps.reserve(runs.size() - 1);
  for (size_t i = 0; i + 1 < runs.size(); ++i)
    gaps.push_back(static_cast<double>(runs[i + 1].begin - runs[i].end) /
                   static_cast<double>(sig.sample_rate));
  return detail::population_std(gaps);
}

/// Number of strict sign changes between consecutive samples; zero-valued
/// samples carry the previous sign.
inline long zero_count(const Signal& sig) {
  if (sig.samples.empty()) throw Error("zero_count: empty signal");
  long count = 0;
  int prev = 0;
  for (double x : sig.samples) {
    int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

/// Mean of the half-wave-rectified first difference of a per-frame RMS
/// envelope; 0 when fewer than two frames fit.
inline double mean_onset_strength(const Signal& sig, int frame = 1024, int hop = 512) {
  if (frame < 2) throw Error("mean_onset_strength: frame must be >= 2");
  if (hop < 1 || hop > frame) throw Error("mean_onset_strength: hop must be in [1, frame]");
  if (sig.samples.empty()) throw Error("mean_onset_strength: empty signal");
  auto starts = detail::frame_starts(sig.samples.size(), frame, hop);
  if (starts.size() < 2) return 0.0;
  std::vector<double> env;
  env.reserve(starts.size());
  for (size_t s : starts) {
    double acc = 0.0;
    for (int i = 0; i < frame; ++i) {
      size_t idx = s + static_cast<size_t>(i);
      double x = idx < sig.samples.size() ? sig.samples[idx] : 0.0;
      acc += x * x;
    }
    env.push_back(std::sqrt(acc / frame));
  }
  double total = 0.0;
  for (size_t t = 1; t < env.size(); ++t) total += std::max(0.0, env[t] - env[t - 1]);
  return total / static_cast<double>(env.size() - 1);
}

/// Mean over Hann-windowed frames of the amplitude-weighted mean frequency
/// over non-negative bins. Frames with an all-zero spectrum contribute 0.
inline double spectral_centroid(const Signal& sig, int frame = 1024, int hop = 512) {
  if (frame < 2 || (frame & (frame - 1)) != 0)
    throw Error("spectral_centroid: frame must be a power of two >= 2");
  if (hop < 1 || hop > frame) throw Error("spectral_centroid: hop must be in [1, frame]");
  if (sig.samples.empty()) throw Error("spectral_centroid: empty signal");
  auto starts = detail::frame_starts(sig.samples.size(), frame, hop);
  const double bin_hz = static_cast<double>(sig.sample_rate) / frame;
  double total = 0.0;
  for (size_t s : starts) {
    std::vector<std::complex<double>> buf(static_cast<size_t>(frame));
    for (int i = 0; i < frame; ++i) {
      size_t idx = s + static_cast<size_t>(i);
      double x = idx < sig.samples.size() ? sig.samples[idx] : 0.0;
      buf[static_cast<size_t>(i)] = x * detail::hann(i, frame);
    }
    detail::fft_inplace(buf);
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= frame / 2; ++k) {
      double mag = std::abs(buf[static_cast<size_t>(k)]);
      num += k * bin_hz * mag;
      den += mag;
    }
    total += den > 0.0 ? num / den : 0.0;
  }
  return total / static_cast<double>(starts.size());
}

inline FeatureVector extract_features(const Signal& sig, const FeatureParams& p = {}) {
  FeatureVector f;
  f.mean_amplitude = mean_amplitude(sig);
  f.rms = rms(sig);
  f.pulse_count = pulse_count(sig, p.threshold_ratio, p.min_gap_seconds);
  f.std_pulse_distance = std_pulse_distance(sig, p.threshold_ratio, p.min_gap_seconds);
  f.zero_count = zero_count(sig);
  f.mean_onset_strength = mean_onset_strength(sig, p.frame, p.hop);
  f.spectral_centroid = spectral_centroid(sig, p.frame, p.hop);
  return f;
}

/// One row per signal in corpus id order; pure in (corpus, params).
inline FeatureMatrix extract_all(const Corpus& corpus, const FeatureParams& p = {}) {
  FeatureMatrix m;
  for (const auto& [id, sig] : corpus.signals) {
    m.signal_ids.push_back(id);
    m.values.push_back(extract_features(sig, p).as_array());
  }
  return m;
}

/// Per-column z-score with population std; constant columns map to all-zero
/// and are recorded in constant_columns.
inline FeatureMatrix normalize_features(const FeatureMatrix& raw) {
  if (raw.normalized) throw Error("normalize_features: matrix is already normalized");
  FeatureMatrix out = raw;
  out.normalized = true;
  out.constant_columns.clear();
  const size_t n = raw.values.size();
  if (n == 0) return out;
  for (int c = 0; c < 7; ++c) {
    double mean = 0.0;
    for (const auto& row : raw.values) mean += row[static_cast<size_t>(c)];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& row : raw.values) {
      double d = row[static_cast<size_t>(c)] - mean;
      var += d * d;
    }
    double std = std::sqrt(var / static_cast<double>(n));
    if (std == 0.0) {
      out.constant_columns.push_back(c);
      for (auto& row : out.values) row[static_cast<size_t>(c)] = 0.0;
    } else {
      for (auto& row : out.values) {
        size_t cc = static_cast<size_t>(c);
        row[cc] = (row[cc] - mean) / std;
      }
    }
  }
  return out;
}

/// CSV export with a header row and 9 significant digits.
inline void write_feature_csv(const FeatureMatrix& m, const std::filesystem::path& path) {
  std::string out = "signal_id";
  for (const char* name : kFeatureNames) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (size_t r = 0; r < m.signal_ids.size(); ++r) {
    std::vector<std::string> row{m.signal_ids[r]};
    for (double v : m.values[r]) row.push_back(format_sig(v, 9));
    out += csvio::format_row(row);
  }
  fsio::write_file(path, out);
}

inline FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  FeatureMatrix m;
  bool header_seen = false;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    auto fields = csvio::parse_row(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 8 || fields[0] != "signal_id")
        throw Error(path.string() + ": unexpected feature CSV header");
      return;
    }
    if (fields.size() != 8)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": expected 8 columns");
    std::array<double, 7> row{};
    for (int c = 0; c < 7; ++c) {
      auto v = text::parse_double(fields[static_cast<size_t>(c) + 1]);
      if (!v)
        throw Error(path.string() + ":" + std::to_string(line_number) + ": non-numeric cell '" +
                    fields[static_cast<size_t>(c) + 1] + "'");
      row[static_cast<size_t>(c)] = *v;
    }
    m.signal_ids.push_back(fields[0]);
    m.values.push_back(row);
  });
  if (!header_seen) throw Error(path.string() + ": empty feature CSV");
  return m;
}

/// Sidecar metadata echoing the extraction parameters.
inline void write_feature_meta(const FeatureParams& p, const FeatureMatrix& normalized,
                               const std::filesystem::path& path) {
  nlohmann::json meta{{"threshold_ratio", p.threshold_ratio},
                      {"min_gap_seconds", p.min_gap_seconds},
                      {"frame", p.frame},
                      {"hop", p.hop},
                      {"normalization", "z-score (population std)"}};
  nlohmann::json warn = nlohmann::json::array();
  for (int c : normalized.constant_columns) warn.push_back(kFeatureNames[static_cast<size_t>(c)]);
  meta["constant_columns"] = warn;
  fsio::write_file(path, meta.dump(2) + "\n");
}

}  // namespace hapticlang
