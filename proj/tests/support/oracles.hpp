#pragma once

// Independent reference implementations used as test oracles. These
// deliberately avoid the library's computation paths: direct O(n^2) DFT
// instead of FFT, per-step recomputed linkage distances instead of
// Lance-Williams updates, and an alternative Pearson formula.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace test_oracles {

inline double mean_abs_oracle(const std::vector<double>& x) {
  long double acc = 0.0L;
  for (double v : x) acc += std::fabs(v);
  return static_cast<double>(acc / static_cast<long double>(x.size()));
}

inline double rms_oracle(const std::vector<double>& x) {
  long double acc = 0.0L;
  for (double v : x) acc += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(static_cast<double>(acc / static_cast<long double>(x.size()))));
}

inline long zero_count_oracle(const std::vector<double>& x) {
  long count = 0;
  int prev = 0;
  for (double v : x) {
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

/// Spectral centroid via a direct DFT over Hann-windowed frames; mirrors the
/// documented frame layout but not the FFT code path.
inline double spectral_centroid_oracle(const std::vector<double>& samples, int sample_rate,
                                       int frame, int hop) {
  std::vector<size_t> starts;
  if (samples.size() < static_cast<size_t>(frame)) {
    starts.push_back(0);
  } else {
    for (size_t s = 0; s + static_cast<size_t>(frame) <= samples.size();
         s += static_cast<size_t>(hop))
      starts.push_back(s);
  }
  const double bin_hz = static_cast<double>(sample_rate) / frame;
  double total = 0.0;
  for (size_t s : starts) {
    std::vector<double> windowed(static_cast<size_t>(frame));
    for (int i = 0; i < frame; ++i) {
      size_t idx = s + static_cast<size_t>(i);
      double x = idx < samples.size() ? samples[idx] : 0.0;
      windowed[static_cast<size_t>(i)] =
          x * (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / frame));
    }
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= frame / 2; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int t = 0; t < frame; ++t) {
        double ang = -2.0 * std::numbers::pi * k * t / frame;
        acc += windowed[static_cast<size_t>(t)] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      double mag = std::abs(acc);
      num += k * bin_hz * mag;
      den += mag;
    }
    total += den > 0.0 ? num / den : 0.0;
  }
  return total / static_cast<double>(starts.size());
}

/// Pearson by the expanded-sums route (different accumulation than the
/// library's centered two-pass formula).
inline std::optional<double> pearson_oracle(const std::vector<double>& x,
                                            const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  double vx = sxx - sx * sx / n;
  double vy = syy - sy * sy / n;
  if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
  return (sxy - sx * sy / n) / std::sqrt(vx * vy);
}

// ---------------------------------------------------------------------------
// Brute-force agglomerative clustering reference. Maintains explicit member
// sets and recomputes every cluster-pair linkage distance from the original
// point distance matrix at each step, with the same tie rule as the library:
// the tied pair with the lexicographically smallest merged member sequence
// wins.

struct OracleMerge {
  std::vector<int> merged_members;  // sorted leaf indices of the new cluster
  double distance = 0.0;
};

enum class OracleLinkage { average, complete, single };

inline std::vector<OracleMerge> linkage_oracle(const std::vector<std::vector<double>>& point_dist,
                                               OracleLinkage linkage) {
  const size_t n = point_dist.size();
  std::vector<std::vector<int>> clusters(n);
  for (size_t i = 0; i < n; ++i) clusters[i] = {static_cast<int>(i)};

  auto cluster_distance = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double best = linkage == OracleLinkage::single ? std::numeric_limits<double>::infinity()
                                                   : -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int i : a)
      for (int j : b) {
        double d = point_dist[static_cast<size_t>(i)][static_cast<size_t>(j)];
        sum += d;
        best = linkage == OracleLinkage::single ? std::min(best, d) : std::max(best, d);
      }
    if (linkage == OracleLinkage::average)
      return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return best;
  };

  std::vector<OracleMerge> merges;
  while (clusters.size() > 1) {
    size_t best_a = 0, best_b = 1;
    double best_d = std::numeric_limits<double>::infinity();
    std::vector<int> best_union;
    for (size_t a = 0; a < clusters.size(); ++a) {
      for (size_t b = a + 1; b < clusters.size(); ++b) {
        double d = cluster_distance(clusters[a], clusters[b]);
        std::vector<int> u;
        std::merge(clusters[a].begin(), clusters[a].end(), clusters[b].begin(), clusters[b].end(),
                   std::back_inserter(u));
        if (d < best_d ||
            (d == best_d && std::lexicographical_compare(u.begin(), u.end(), best_union.begin(),
                                                         best_union.end()))) {
          best_d = d;
          best_a = a;
          best_b = b;
          best_union = std::move(u);
        }
      }
    }
    merges.push_back({best_union, best_d});
    clusters[best_a] = std::move(best_union);
    clusters.erase(clusters.begin() + static_cast<long>(best_b));
  }
  return merges;
}

/// Direct mean silhouette from a full distance matrix and labels.
inline double silhouette_oracle(const std::vector<std::vector<double>>& dist,
                                const std::vector<int>& labels) {
  const size_t n = dist.size();
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> sum(static_cast<size_t>(k), 0.0);
    std::vector<long> cnt(static_cast<size_t>(k), 0);
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      sum[static_cast<size_t>(labels[j])] += dist[i][j];
      ++cnt[static_cast<size_t>(labels[j])];
    }
    long own_total = 0;
    for (size_t j = 0; j < n; ++j)
      if (labels[j] == labels[i]) ++own_total;
    if (own_total <= 1) continue;
    double a = sum[static_cast<size_t>(labels[i])] / static_cast<double>(own_total - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == labels[i] || cnt[static_cast<size_t>(c)] == 0) continue;
      long members = cnt[static_cast<size_t>(c)] + 0;
      b = std::min(b, sum[static_cast<size_t>(c)] / static_cast<double>(members));
    }
    if (std::max(a, b) > 0.0) total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

}  // namespace test_oracles
