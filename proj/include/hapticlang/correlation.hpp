#pragma once

// Signal x cluster count matrices, Pearson correlation against the seven
// features, and the tie-aware largest-correlation report.

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hapticlang/clustering.hpp"
#include "hapticlang/common.hpp"
#include "hapticlang/sentiment_lexicon.hpp"
#include "hapticlang/signal_features.hpp"

namespace hapticlang {

struct CountMatrix {
  std::vector<std::string> signal_ids;   // rows, corpus order
  std::vector<std::string> cluster_ids;  // columns, cluster id order
  std::vector<std::vector<long>> counts;
};

/// Cell (s, c) = total occurrences over signal s's transcripts of keywords
/// belonging to cluster c. Every listed signal gets a row even when all-zero;
/// keywords outside the clustered vocabulary are ignored.
inline CountMatrix build_count_matrix(const KeywordCounts& keywords_per_signal,
                                      const ClusterSet& clusters,
                                      const std::vector<std::string>& signal_ids) {
  CountMatrix m;
  m.signal_ids = signal_ids;
  std::map<std::string, size_t> keyword_column;
  for (const auto& cluster : clusters.clusters) {
    for (const auto& [kw, _] : cluster.members) keyword_column[kw] = m.cluster_ids.size();
    m.cluster_ids.push_back(cluster.id);
  }
  std::map<std::string, size_t> row_of;
  for (size_t i = 0; i < signal_ids.size(); ++i) row_of[signal_ids[i]] = i;
  m.counts.assign(signal_ids.size(), std::vector<long>(m.cluster_ids.size(), 0));
  for (const auto& [signal_id, per_keyword] : keywords_per_signal) {
    auto row = row_of.find(signal_id);
    if (row == row_of.end())
      throw Error("keyword attributed to unknown signal '" + signal_id + "'");
    for (const auto& [kw, count] : per_keyword) {
      auto col = keyword_column.find(kw);
      if (col == keyword_column.end()) continue;
      m.counts[row->second][col->second] += count;
    }
  }
  return m;
}

/// Pearson's r, or nullopt when either input has zero variance (undefined,
/// never silently zero). Defined results are clamped to [-1, 1].
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw Error("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()) + ")");
  if (x.size() < 2) throw Error("pearson: need at least 2 observations");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return std::max(-1.0, std::min(1.0, r));
}

struct CorrelationMatrix {
  std::vector<std::string> feature_names;  // the 7 features, fixed order
  std::vector<std::string> cluster_ids;
  std::vector<std::vector<std::optional<double>>> values;  // features x clusters
};

/// One r per (feature, cluster); requires identical signal row ordering.
inline CorrelationMatrix correlate_all(const FeatureMatrix& features, const CountMatrix& counts) {
  if (features.signal_ids != counts.signal_ids)
    throw Error("correlate_all: feature and count matrices disagree on signal rows");
  CorrelationMatrix out;
  out.feature_names.assign(kFeatureNames.begin(), kFeatureNames.end());
  out.cluster_ids = counts.cluster_ids;
  const size_t n = features.signal_ids.size();
  for (size_t f = 0; f < kFeatureNames.size(); ++f) {
    std::vector<double> x(n);
    for (size_t s = 0; s < n; ++s) x[s] = features.values[s][f];
    std::vector<std::optional<double>> row;
    row.reserve(counts.cluster_ids.size());
    for (size_t c = 0; c < counts.cluster_ids.size(); ++c) {
      std::vector<double> y(n);
      for (size_t s = 0; s < n; ++s) y[s] = static_cast<double>(counts.counts[s][c]);
      row.push_back(pearson(x, y));
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

struct ReportEntry {
  std::string cluster_id;
  std::string top_keyword;  // the cluster's most frequent member
  double r = 0.0;
};

struct FeatureReport {
  std::string feature;
  Sentiment sentiment = Sentiment::positive;
  std::vector<ReportEntry> entries;  // empty + all_undefined when no cell is defined
  bool all_undefined = false;
};

/// Per feature: the max-|r| cluster plus every cluster whose |r| is within
/// `tie_window` of the maximum, in descending |r| order.
inline std::vector<FeatureReport> largest_report(
    const CorrelationMatrix& corr, Sentiment sentiment,
    const std::map<std::string, std::string>& top_keyword_by_cluster,
    double tie_window = 0.02) {
  std::vector<FeatureReport> out;
  for (size_t f = 0; f < corr.feature_names.size(); ++f) {
    FeatureReport report;
    report.feature = corr.feature_names[f];
    report.sentiment = sentiment;
    double max_abs = -1.0;
    for (const auto& cell : corr.values[f])
      if (cell) max_abs = std::max(max_abs, std::fabs(*cell));
    if (max_abs < 0.0) {
      report.all_undefined = true;
      out.push_back(std::move(report));
      continue;
    }
    for (size_t c = 0; c < corr.cluster_ids.size(); ++c) {
      const auto& cell = corr.values[f][c];
      if (!cell) continue;
      if (max_abs - std::fabs(*cell) <= tie_window + 1e-12) {
        ReportEntry e;
        e.cluster_id = corr.cluster_ids[c];
        auto it = top_keyword_by_cluster.find(e.cluster_id);
        if (it != top_keyword_by_cluster.end()) e.top_keyword = it->second;
        e.r = *cell;
        report.entries.push_back(std::move(e));
      }
    }
    std::stable_sort(report.entries.begin(), report.entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) {
                       return std::fabs(a.r) > std::fabs(b.r);
                     });
    out.push_back(std::move(report));
  }
  return out;
}

inline std::vector<FeatureReport> largest_report(const CorrelationMatrix& corr,
                                                 const ClusterSet& labeled,
                                                 double tie_window = 0.02) {
  std::map<std::string, std::string> top;
  for (const auto& c : labeled.clusters)
    if (!c.label.empty()) top[c.id] = c.label.front();
  return largest_report(corr, labeled.sentiment, top, tie_window);
}

// --------------------------------------------------------------------------
// CSV serialization (6 decimal places; undefined cells stay empty)

inline void write_correlation_csv(const CorrelationMatrix& corr, const std::filesystem::path& path) {
  std::string out = "feature";
  for (const auto& id : corr.cluster_ids) {
    out += ',';
    out += id;
  }
  out += '\n';
  for (size_t f = 0; f < corr.feature_names.size(); ++f) {
    std::vector<std::string> row{corr.feature_names[f]};
    for (const auto& cell : corr.values[f]) row.push_back(cell ? format_fixed(*cell, 6) : "");
    out += csvio::format_row(row);
  }
  fsio::write_file(path, out);
}

inline CorrelationMatrix read_correlation_csv(const std::filesystem::path& path) {
  CorrelationMatrix m;
  bool header_seen = false;
  fsio::for_each_line(path, [&](const std::string& line, long line_number) {
    if (text::trim(line).empty()) return;
    auto fields = csvio::parse_row(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.empty() || fields[0] != "feature")
        throw Error(path.string() + ": unexpected correlation CSV header");
      m.cluster_ids.assign(fields.begin() + 1, fields.end());
      return;
    }
    if (fields.size() != m.cluster_ids.size() + 1)
      throw Error(path.string() + ":" + std::to_string(line_number) + ": wrong column count");
    m.feature_names.push_back(fields[0]);
    std::vector<std::optional<double>> row;
    for (size_t c = 1; c < fields.size(); ++c) {
      if (text::trim(fields[c]).empty()) {
        row.push_back(std::nullopt);
        continue;
      }
      auto v = text::parse_double(fields[c]);
      if (!v)
        throw Error(path.string() + ":" + std::to_string(line_number) + ": non-numeric cell '" +
                    fields[c] + "'");
      row.push_back(*v);
    }
    m.values.push_back(std::move(row));
  });
  if (!header_seen) throw Error(path.string() + ": empty correlation CSV");
  return m;
}

inline void write_count_csv(const CountMatrix& m, const std::filesystem::path& path) {
  std::string out = "signal_id";
  for (const auto& id : m.cluster_ids) {
    out += ',';
    out += id;
  }
  out += '\n';
  for (size_t s = 0; s < m.signal_ids.size(); ++s) {
    std::vector<std::string> row{m.signal_ids[s]};
    for (long v : m.counts[s]) row.push_back(std::to_string(v));
    out += csvio::format_row(row);
  }
  fsio::write_file(path, out);
}

}  // namespace hapticlang
