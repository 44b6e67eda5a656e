#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bernoulli/numbers.hpp"

namespace bernoulli {

inline constexpr const char* kToolVersion = "bernoulli 0.1.0";

/// Canonical serialization of a request: tool version, subcommand, and the
/// sorted key=value parameter map. Unique per request, so digests are stable
/// cache keys.
inline std::string canonical_request(const std::string& subcommand,
                                     const std::map<std::string, std::string>& params) {
  std::ostringstream os;
  os << kToolVersion << "\n" << subcommand << "\n";
  for (const auto& [k, v] : params) os << k << "=" << v << "\n";
  return os.str();
}

inline std::string request_digest(const std::string& canonical) {
  std::uint64_t a = fnv1a64(canonical);
  std::uint64_t b = fnv1a64(canonical, 0x9ae16a3b2f90404full);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a),
                static_cast<unsigned long long>(b));
  return buf;
}

struct CachedResult {
  std::string payload;
  int exit_code = 0;
};

/// Content-addressed file cache for CLI results. Lookups verify the full
/// canonical request (not just the digest); corrupt entries count as misses.
/// Stores are atomic (write temp, rename). An unusable cache directory
/// disables caching with a warning; computation proceeds regardless.
class ResultCache {
 public:
  static ResultCache open_default() {
    ResultCache cache;
    namespace fs = std::filesystem;
    fs::path dir;
    if (const char* env = std::getenv("BERNOULLI_CACHE")) {
      dir = env;
    } else if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
      dir = fs::path(xdg) / "bernoulli";
    } else if (const char* home = std::getenv("HOME")) {
      dir = fs::path(home) / ".cache" / "bernoulli";
    } else {
      cache.warning_ = "cache disabled: no BERNOULLI_CACHE, XDG_CACHE_HOME or HOME";
      return cache;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
      cache.warning_ = "cache disabled: cannot create " + dir.string() + " (" + ec.message() + ")";
      return cache;
    }
    fs::path probe = dir / ".probe";
    {
      std::ofstream f(probe);
      if (!f) {
        cache.warning_ = "cache disabled: " + dir.string() + " is not writable";
        return cache;
      }
    }
    fs::remove(probe, ec);
    cache.dir_ = dir;
    cache.enabled_ = true;
    return cache;
  }

  bool enabled() const { return enabled_; }
  const std::string& warning() const { return warning_; }

  std::optional<CachedResult> lookup(const std::string& canonical) const {
    if (!enabled_) return std::nullopt;
    auto path = dir_ / (request_digest(canonical) + ".json");
    std::ifstream f(path);
    if (!f) return std::nullopt;
    try {
      nlohmann::json j = nlohmann::json::parse(f);
      if (j.at("request").get<std::string>() != canonical) return std::nullopt;
      return CachedResult{j.at("payload").get<std::string>(), j.at("exit").get<int>()};
    } catch (...) {
      return std::nullopt;  // corrupt entry: recompute and overwrite
    }
  }

  void store(const std::string& canonical, const CachedResult& result) const {
    if (!enabled_) return;
    nlohmann::json j;
    j["request"] = canonical;
    j["tool_version"] = kToolVersion;
    j["created_at"] = static_cast<long>(std::time(nullptr));
    j["exit"] = result.exit_code;
    j["payload"] = result.payload;
    auto path = dir_ / (request_digest(canonical) + ".json");
    auto tmp = dir_ / (request_digest(canonical) + ".tmp");
    {
      std::ofstream f(tmp);
      if (!f) return;
      f << j.dump();
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
  }

 private:
  std::filesystem::path dir_;
  bool enabled_ = false;
  std::string warning_;
};

}  // namespace bernoulli
