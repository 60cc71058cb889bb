#pragma once

// Persistent Weingarten matrices: one JSON file per (family, k, N) under
// <dir>/<family>/k<k>_N<N>.json. Writes go to a temporary file in the same
// directory followed by a rename, so readers never see a partial file.

#include "wg/numeric.hpp"
#include "wg/weingarten.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <tuple>

namespace wg {

namespace fs = std::filesystem;

/// Platform data directory for the cache when neither flag nor env is set.
inline fs::path default_cache_dir() {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v && *v) return std::string(v);
    return std::nullopt;
  };
#if defined(_WIN32)
  if (auto v = env("LOCALAPPDATA")) return fs::path(*v) / "wgcalc";
#elif defined(__APPLE__)
  if (auto v = env("HOME")) return fs::path(*v) / "Library" / "Application Support" / "wgcalc";
#else
  if (auto v = env("XDG_DATA_HOME")) return fs::path(*v) / "wgcalc";
  if (auto v = env("HOME")) return fs::path(*v) / ".local" / "share" / "wgcalc";
#endif
  return fs::temp_directory_path() / "wgcalc";
}

/// Flag, then WG_CACHE_DIR, then the platform default.
inline fs::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* v = std::getenv("WG_CACHE_DIR"); v && *v) return fs::path(v);
  return default_cache_dir();
}

inline nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json j;
  j["family"] = std::string(family_name(m.family));
  j["k"] = m.k;
  j["N"] = m.N;
  auto& basis = j["basis"] = nlohmann::json::array();
  for (const auto& p : m.basis) basis.push_back(p.to_string());
  auto& rows = j["entries"] = nlohmann::json::array();
  for (std::size_t r = 0; r < m.order(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.order(); ++c) {
      auto [num, den] = to_num_den(m(r, c));
      row.push_back({{"num", num}, {"den", den}});
    }
    rows.push_back(std::move(row));
  }
  return j;
}

/// Throws on any structural problem.
inline RationalMatrix matrix_from_json(const nlohmann::json& j) {
  RationalMatrix m;
  m.family = parse_family(j.at("family").get<std::string>());
  m.k = j.at("k").get<int>();
  m.N = j.at("N").get<int>();
  for (const auto& s : j.at("basis")) m.basis.push_back(Partition::parse(s.get<std::string>()));
  const auto& rows = j.at("entries");
  const std::size_t n = m.basis.size();
  if (rows.size() != n) throw std::runtime_error("entries: wrong row count");
  m.entries = RationalEntries(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw std::runtime_error("entries: wrong column count");
    for (std::size_t c = 0; c < n; ++c)
      m.entries(r, c) = from_num_den(rows[r][c].at("num").get<std::string>(), rows[r][c].at("den").get<std::string>());
  }
  return m;
}

class WeingartenCache {
 public:
  using Warn = std::function<void(const std::string&)>;

  /// Without a directory the cache is memory-only.
  explicit WeingartenCache(std::optional<fs::path> dir = std::nullopt, int max_k = default_max_k)
      : dir_(std::move(dir)), max_k_(max_k),
        warn_([](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }) {}

  void set_warning_sink(Warn w) { warn_ = std::move(w); }
  const std::optional<fs::path>& directory() const { return dir_; }
  int max_k() const { return max_k_; }

  fs::path path_for(PairingFamily family, int k, int N) const {
    if (!dir_) throw std::logic_error("memory-only cache has no paths");
    return *dir_ / std::string(family_name(family)) / ("k" + std::to_string(k) + "_N" + std::to_string(N) + ".json");
  }

  /// Disk read only; nullopt when absent or unreadable (a warning is emitted for corrupt files).
  std::optional<RationalMatrix> load(PairingFamily family, int k, int N) const {
    if (!dir_) return std::nullopt;
    const fs::path path = path_for(family, k, N);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    try {
      std::stringstream buf;
      buf << in.rdbuf();
      RationalMatrix m = matrix_from_json(nlohmann::json::parse(buf.str()));
      if (m.family != family || m.k != k || m.N != N || m.basis != enumerate_pairings(k, family))
        throw std::runtime_error("key or basis does not match the file name");
      return m;
    } catch (const std::exception& e) {
      warn_("corrupt cache file " + path.string() + " (" + e.what() + "); recomputing");
      return std::nullopt;
    }
  }

  void store(const RationalMatrix& m) const {
    if (!dir_) return;
    const fs::path path = path_for(m.family, m.k, m.N);
    fs::create_directories(path.parent_path());
    std::random_device rd;
    const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp" + std::to_string(rd()) +
                                               std::to_string(rd()));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
      out << to_json(m).dump() << '\n';
      out.flush();
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot install cache file " + path.string());
    }
  }

  /// Exact Weingarten matrix: memory, then disk, then compute and persist.
  std::shared_ptr<const RationalMatrix> get(PairingFamily family, int k, int N) {
    const Key key{family, k, N, SingularPolicy::strict};
    if (auto hit = lookup(key)) return hit;
    {
      std::lock_guard lock(mutex_);
      if (auto it = singular_.find(key); it != singular_.end()) throw it->second;
    }
    if (auto disk = load(family, k, N)) {
      ++disk_hits_;
      return remember(key, std::move(*disk));
    }
    ++computed_;
    try {
      RationalMatrix w = weingarten_matrix(family, k, N, max_k_);
      store(w);
      return remember(key, std::move(w));
    } catch (const GramSingular& e) {
      std::lock_guard lock(mutex_);
      singular_.insert_or_assign(key, e);
      throw;
    }
  }

  /// Store explicitly (the stored matrix is returned by later gets).
  void put(const RationalMatrix& m) {
    store(m);
    remember({m.family, m.k, m.N, SingularPolicy::strict}, m);
  }

  /// Matrix used by moment evaluation. Under reduced_basis a singular Gram
  /// falls back to the generalized inverse, kept in memory only.
  std::shared_ptr<const RationalMatrix> weights(PairingFamily family, int k, int N, SingularPolicy policy) {
    try {
      return get(family, k, N);
    } catch (const GramSingular&) {
      if (policy == SingularPolicy::strict) throw;
    }
    const Key key{family, k, N, SingularPolicy::reduced_basis};
    if (auto hit = lookup(key)) return hit;
    ++computed_;
    return remember(key, reduced_weingarten_matrix(family, k, N, max_k_));
  }

  std::size_t memory_hits() const { return memory_hits_; }
  std::size_t disk_hits() const { return disk_hits_; }
  std::size_t computed() const { return computed_; }

 private:
  using Key = std::tuple<PairingFamily, int, int, SingularPolicy>;

  std::shared_ptr<const RationalMatrix> lookup(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return nullptr;
    ++memory_hits_;
    return it->second;
  }

  std::shared_ptr<const RationalMatrix> remember(const Key& key, RationalMatrix m) {
    auto ptr = std::make_shared<const RationalMatrix>(std::move(m));
    std::lock_guard lock(mutex_);
    return memo_.insert_or_assign(key, ptr).first->second;
  }

  std::optional<fs::path> dir_;
  int max_k_;
  Warn warn_;
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const RationalMatrix>> memo_;
  std::map<Key, GramSingular> singular_;
  std::atomic<std::size_t> memory_hits_{0};
  std::atomic<std::size_t> disk_hits_{0};
  std::atomic<std::size_t> computed_{0};
};

/// Process-wide memory-only cache used when callers pass none.
inline WeingartenCache& memory_cache() {
  static WeingartenCache cache;
  return cache;
}

}  // namespace wg
