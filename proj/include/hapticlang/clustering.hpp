#pragma once

// Agglomerative hierarchical clustering of keyword vectors, cluster labeling
// by corpus frequency, silhouette-based k selection, and a deterministic PCA
// projection for scatter plots.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/embeddings.hpp"

#include "json.hpp"

namespace hapticlang {

enum class Linkage { average, complete, single };

inline Linkage parse_linkage(std::string_view s) {
  if (s == "average") return Linkage::average;
  if (s == "complete") return Linkage::complete;
  if (s == "single") return Linkage::single;
  throw Error("unknown linkage '" + std::string(s) + "'");
}

inline const char* to_string(Linkage l) {
  switch (l) {
    case Linkage::average: return "average";
    case Linkage::complete: return "complete";
    case Linkage::single: return "single";
  }
  return "?";
}

/// Bottom-up merge tree. Node ids: leaves are 0..n-1 in leaf order, the merge
/// at position t creates node n+t.
struct Dendrogram {
  std::vector<std::string> leaves;  // sorted keywords
  struct Merge {
    int left = 0;   // node id with the lexicographically smaller member set
    int right = 0;
    double distance = 0.0;
  };
  std::vector<Merge> merges;  // exactly n-1 entries
};

using VectorMap = std::map<std::string, std::vector<double>>;

struct Cluster {
  std::string id;  // P1.. / N1..
  std::vector<std::pair<std::string, long>> members;  // (keyword, corpus frequency)
  std::vector<std::string> label;  // up to 3 most frequent members
};

struct ClusterSet {
  Sentiment sentiment = Sentiment::positive;
  std::vector<Cluster> clusters;  // id order

  const Cluster* find(const std::string& id) const {
    for (const auto& c : clusters)
      if (c.id == id) return &c;
    return nullptr;
  }
};

struct Projection2D {
  std::vector<std::string> keywords;
  std::vector<std::array<double, 2>> points;
  std::vector<std::string> cluster_ids;  // empty strings when no cluster set given
};

namespace detail {

/// Pairwise cosine distance matrix in leaf (sorted keyword) order.
inline std::vector<double> cosine_matrix(const std::vector<const std::vector<double>*>& vecs) {
  const size_t n = vecs.size();
  std::vector<double> d(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double dist = cosine_distance(*vecs[i], *vecs[j]);
      d[i * n + j] = dist;
      d[j * n + i] = dist;
    }
  return d;
}

}  // namespace detail

/// Standard bottom-up agglomeration with Lance-Williams updates. Ties in the
/// minimum linkage distance are broken by the lexicographically smallest
/// (then second-smallest, ...) member keyword of the merged pair, which makes
/// the merge sequence total and deterministic.
inline Dendrogram agglomerate(const VectorMap& vectors, Linkage linkage = Linkage::average) {
  const size_t n = vectors.size();
  if (n < 2) throw Error("agglomerate: need at least 2 vectors");

  Dendrogram dendro;
  std::vector<const std::vector<double>*> vecs;
  dendro.leaves.reserve(n);
  vecs.reserve(n);
  size_t dim = 0;
  for (const auto& [kw, vec] : vectors) {
    if (dim == 0) dim = vec.size();
    if (vec.size() != dim)
      throw Error("agglomerate: vector dimension mismatch for '" + kw + "'");
    dendro.leaves.push_back(kw);
    vecs.push_back(&vec);
  }

  std::vector<double> dist = detail::cosine_matrix(vecs);
  std::vector<bool> active(n, true);
  std::vector<int> node_id(n);
  // Leaf indices are assigned in sorted keyword order, so comparing member
  // index sequences compares keyword sequences.
  std::vector<std::vector<int>> members(n);
  for (size_t i = 0; i < n; ++i) {
    node_id[i] = static_cast<int>(i);
    members[i] = {static_cast<int>(i)};
  }

  auto merged_members = [&](size_t a, size_t b) {
    std::vector<int> m;
    m.reserve(members[a].size() + members[b].size());
    std::merge(members[a].begin(), members[a].end(), members[b].begin(), members[b].end(),
               std::back_inserter(m));
    return m;
  };

  double prev_distance = -1.0;
  for (size_t step = 0; step + 1 < n; ++step) {
    // Scan for the minimum; on exact ties keep the pair whose merged member
    // sequence is lexicographically smallest.
    size_t best_i = 0, best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_union;
    for (size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        double d = dist[i * n + j];
        if (d > best) continue;
        if (d < best) {
          best = d;
          best_i = i;
          best_j = j;
          best_union.clear();
          continue;
        }
        if (best_union.empty()) best_union = merged_members(best_i, best_j);
        auto candidate = merged_members(i, j);
        if (std::lexicographical_compare(candidate.begin(), candidate.end(), best_union.begin(),
                                         best_union.end())) {
          best_i = i;
          best_j = j;
          best_union = std::move(candidate);
        }
      }
    }

    // Reducible linkages cannot produce decreasing merge distances.
    if (best + 1e-9 < prev_distance)
      throw Error("agglomerate: merge distances decreased (non-reducible update)");
    prev_distance = std::max(prev_distance, best);

    bool left_is_i = std::lexicographical_compare(members[best_i].begin(), members[best_i].end(),
                                                  members[best_j].begin(), members[best_j].end());
    Dendrogram::Merge m;
    m.left = left_is_i ? node_id[best_i] : node_id[best_j];
    m.right = left_is_i ? node_id[best_j] : node_id[best_i];
    m.distance = best;
    dendro.merges.push_back(m);

    const auto size_i = static_cast<double>(members[best_i].size());
    const auto size_j = static_cast<double>(members[best_j].size());
    for (size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_i || k == best_j) continue;
      double dik = dist[best_i * n + k];
      double djk = dist[best_j * n + k];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::average:
          updated = (size_i * dik + size_j * djk) / (size_i + size_j);
          break;
        case Linkage::complete:
          updated = std::max(dik, djk);
          break;
        case Linkage::single:
          updated = std::min(dik, djk);
          break;
      }
      dist[best_i * n + k] = updated;
      dist[k * n + best_i] = updated;
    }
    members[best_i] = merged_members(best_i, best_j);
    node_id[best_i] = static_cast<int>(n + step);
    active[best_j] = false;
  }
  return dendro;
}

/// Leaf -> cluster index after undoing the last k-1 merges (i.e. applying the
/// first n-k). Cluster indices are arbitrary but deterministic.
inline std::vector<int> assignments_at_k(const Dendrogram& dendro, int k) {
  const int n = static_cast<int>(dendro.leaves.size());
  if (k < 1 || k > n) throw Error("cut: k must be in [1, " + std::to_string(n) + "]");
  std::vector<int> parent(static_cast<size_t>(n) + dendro.merges.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int t = 0; t < n - k; ++t) {
    const auto& m = dendro.merges[static_cast<size_t>(t)];
    int target = n + t;
    parent[static_cast<size_t>(find(m.left))] = target;
    parent[static_cast<size_t>(find(m.right))] = target;
  }
  std::map<int, int> root_to_cluster;
  std::vector<int> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    auto [it, _] = root_to_cluster.emplace(root, static_cast<int>(root_to_cluster.size()));
    out[static_cast<size_t>(i)] = it->second;
  }
  return out;
}

/// Cuts the dendrogram into k clusters. Ids are assigned in descending
/// cluster size, ties by lexicographically smallest member; members are
/// alphabetical until label_clusters orders them by frequency.
inline ClusterSet cut_to_k(const Dendrogram& dendro, int k,
                           Sentiment sentiment = Sentiment::positive) {
  auto assignment = assignments_at_k(dendro, k);
  std::map<int, std::vector<std::string>> groups;
  for (size_t i = 0; i < assignment.size(); ++i)
    groups[assignment[i]].push_back(dendro.leaves[i]);  // leaf order => alphabetical

  std::vector<std::vector<std::string>> ordered;
  ordered.reserve(groups.size());
  for (auto& [_, g] : groups) ordered.push_back(std::move(g));
  std::sort(ordered.begin(), ordered.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });

  ClusterSet set;
  set.sentiment = sentiment;
  const char* prefix = sentiment == Sentiment::positive ? "P" : "N";
  for (size_t i = 0; i < ordered.size(); ++i) {
    Cluster c;
    c.id = prefix + std::to_string(i + 1);
    for (auto& kw : ordered[i]) c.members.emplace_back(std::move(kw), 0);
    set.clusters.push_back(std::move(c));
  }
  return set;
}

/// Mean silhouette coefficient over all points given a distance matrix
/// (row-major n*n) and cluster labels; singleton clusters score 0.
inline double mean_silhouette(const std::vector<double>& dist, size_t n,
                              const std::vector<int>& labels) {
  int cluster_count = 0;
  for (int l : labels) cluster_count = std::max(cluster_count, l + 1);
  std::vector<long> sizes(static_cast<size_t>(cluster_count), 0);
  for (int l : labels) ++sizes[static_cast<size_t>(l)];
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    int own = labels[i];
    if (sizes[static_cast<size_t>(own)] <= 1) continue;  // s(i) = 0
    std::vector<double> sum(static_cast<size_t>(cluster_count), 0.0);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum[static_cast<size_t>(labels[j])] += dist[i * n + j];
    }
    double a = sum[static_cast<size_t>(own)] / static_cast<double>(sizes[static_cast<size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < cluster_count; ++c) {
      if (c == own || sizes[static_cast<size_t>(c)] == 0) continue;
      b = std::min(b, sum[static_cast<size_t>(c)] / static_cast<double>(sizes[static_cast<size_t>(c)]));
    }
    double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

/// Selects k in [k_min, k_max] maximizing the mean silhouette coefficient
/// under the cosine metric; ties go to the smallest k. Callers may bypass
/// this entirely with an explicit k override.
inline int choose_k(const Dendrogram& dendro, const VectorMap& vectors, int k_min, int k_max) {
  const size_t n = dendro.leaves.size();
  k_max = std::min(k_max, static_cast<int>(n));
  if (k_min < 2) k_min = 2;
  if (k_min > k_max) throw Error("choose_k: empty k range");
  std::vector<const std::vector<double>*> vecs;
  vecs.reserve(n);
  for (const auto& kw : dendro.leaves) {
    auto it = vectors.find(kw);
    if (it == vectors.end()) throw Error("choose_k: missing vector for '" + kw + "'");
    vecs.push_back(&it->second);
  }
  auto dist = detail::cosine_matrix(vecs);
  int best_k = k_min;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    double s = mean_silhouette(dist, n, assignments_at_k(dendro, k));
    if (s > best_score) {
      best_score = s;
      best_k = k;
    }
  }
  return best_k;
}

/// Orders members by corpus frequency (descending, ties alphabetical) and
/// sets each cluster's label to its top 3 members.
inline ClusterSet label_clusters(ClusterSet set, const std::map<std::string, long>& frequencies) {
  for (auto& cluster : set.clusters) {
    for (auto& [kw, freq] : cluster.members) {
      auto it = frequencies.find(kw);
      freq = it == frequencies.end() ? 0 : it->second;
    }
    std::sort(cluster.members.begin(), cluster.members.end(),
              [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
              });
    cluster.label.clear();
    for (size_t i = 0; i < cluster.members.size() && i < 3; ++i)
      cluster.label.push_back(cluster.members[i].first);
  }
  return set;
}

namespace detail {

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Deterministic;
/// fine for the few-hundred-dimension tables used here.
inline void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& eigenvalues,
                         std::vector<std::vector<double>>& eigenvectors) {
  const size_t d = a.size();
  eigenvectors.assign(d, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < d; ++i) eigenvectors[i][i] = 1.0;
  double scale = 0.0;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) scale += a[i][j] * a[i][j];
  const double threshold = std::max(1e-300, scale * 1e-28);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < d; ++p)
      for (size_t q = p + 1; q < d; ++q) off += a[p][q] * a[p][q];
    if (off < threshold) break;
    for (size_t p = 0; p < d; ++p) {
      for (size_t q = p + 1; q < d; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (size_t i = 0; i < d; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (size_t i = 0; i < d; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (size_t i = 0; i < d; ++i) {
          double vip = eigenvectors[i][p], viq = eigenvectors[i][q];
          eigenvectors[i][p] = c * vip - s * viq;
          eigenvectors[i][q] = s * vip + c * viq;
        }
      }
    }
  }
  eigenvalues.resize(d);
  for (size_t i = 0; i < d; ++i) eigenvalues[i] = a[i][i];
}

}  // namespace detail

/// Projects vectors onto their top-2 principal components (mean-centered,
/// population covariance). Sign convention: the largest-magnitude loading of
/// each component is positive. Keywords come out sorted.
inline Projection2D project_2d(const VectorMap& vectors, const ClusterSet* clusters = nullptr) {
  Projection2D proj;
  if (vectors.empty()) return proj;
  const size_t n = vectors.size();
  const size_t d = vectors.begin()->second.size();
  std::vector<std::vector<double>> centered;
  centered.reserve(n);
  std::vector<double> mean(d, 0.0);
  for (const auto& [kw, vec] : vectors) {
    if (vec.size() != d) throw Error("project_2d: vector dimension mismatch for '" + kw + "'");
    proj.keywords.push_back(kw);
    centered.push_back(vec);
    for (size_t j = 0; j < d; ++j) mean[j] += vec[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (auto& row : centered)
    for (size_t j = 0; j < d; ++j) row[j] -= mean[j];

  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& row : centered)
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i; j < d; ++j) cov[i][j] += row[i] * row[j];
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i; j < d; ++j) {
      cov[i][j] /= static_cast<double>(n);
      cov[j][i] = cov[i][j];
    }

  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  detail::jacobi_eigen(cov, eigenvalues, eigenvectors);

  std::vector<size_t> order(d);
  for (size_t i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (eigenvalues[a] != eigenvalues[b]) return eigenvalues[a] > eigenvalues[b];
    return a < b;
  });

  std::vector<std::vector<double>> components;
  for (size_t c = 0; c < 2 && c < d; ++c) {
    std::vector<double> comp(d);
    for (size_t i = 0; i < d; ++i) comp[i] = eigenvectors[i][order[c]];
    size_t peak = 0;
    for (size_t i = 1; i < d; ++i)
      if (std::fabs(comp[i]) > std::fabs(comp[peak])) peak = i;
    if (comp[peak] < 0.0)
      for (double& x : comp) x = -x;
    components.push_back(std::move(comp));
  }

  std::map<std::string, std::string> keyword_cluster;
  if (clusters)
    for (const auto& c : clusters->clusters)
      for (const auto& [kw, _] : c.members) keyword_cluster[kw] = c.id;

  for (size_t r = 0; r < n; ++r) {
    std::array<double, 2> pt{0.0, 0.0};
    for (size_t c = 0; c < components.size(); ++c) {
      double dot = 0.0;
      for (size_t j = 0; j < d; ++j) dot += centered[r][j] * components[c][j];
      pt[c] = dot;
    }
    proj.points.push_back(pt);
    auto it = keyword_cluster.find(proj.keywords[r]);
    proj.cluster_ids.push_back(it == keyword_cluster.end() ? "" : it->second);
  }
  return proj;
}

/// CSV rows keyword,sentiment,cluster_id,frequency in cluster id order.
inline void append_cluster_records_csv(const ClusterSet& set, std::string& out) {
  for (const auto& cluster : set.clusters)
    for (const auto& [kw, freq] : cluster.members)
      out += csvio::format_row({kw, to_string(set.sentiment), cluster.id, std::to_string(freq)});
}

inline nlohmann::json cluster_labels_json(const ClusterSet& set) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cluster : set.clusters) {
    arr.push_back({{"cluster_id", cluster.id},
                   {"sentiment", to_string(set.sentiment)},
                   {"size", cluster.members.size()},
                   {"label", cluster.label}});
  }
  return arr;
}

inline void write_projection_csv(const Projection2D& proj, const std::filesystem::path& path) {
  std::string out = "keyword,x,y,cluster_id\n";
  for (size_t i = 0; i < proj.keywords.size(); ++i)
    out += csvio::format_row({proj.keywords[i], format_sig(proj.points[i][0], 9),
                              format_sig(proj.points[i][1], 9), proj.cluster_ids[i]});
  fsio::write_file(path, out);
}

}  // namespace hapticlang
