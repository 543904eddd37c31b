#pragma once

// Shared test scaffolding: temp directories, deterministic RNG helpers, and
// small file fixtures.

#include <unistd.h>

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hapticlang/common.hpp"
#include "hapticlang/corpus.hpp"

namespace test_support {

/// Self-cleaning unique temp directory.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto candidate = base / ("hapticlang-" + tag + "-" + std::to_string(::getpid()) + "-" +
                               std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directories(candidate, ec)) {
        path_ = candidate;
        break;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline hapticlang::Signal make_signal(const std::string& id, std::vector<double> samples,
                                      int rate = 1000) {
  return hapticlang::Signal{id, std::move(samples), rate};
}

inline std::vector<double> random_samples(std::mt19937& rng, size_t n, double lo = -1.0,
                                          double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& x : out) x = dist(rng);
  return out;
}

/// Reads every regular file under root into (relative path -> bytes).
inline std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out[std::filesystem::relative(entry.path(), root).string()] =
        hapticlang::fsio::read_file(entry.path());
  }
  return out;
}

}  // namespace test_support
