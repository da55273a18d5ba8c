#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cubefree/report.hpp"

namespace cubefree {

inline constexpr int kCacheSchemaVersion = 1;
inline constexpr const char* kToolVersion = "cubefree 0.1.0";
inline constexpr const char* kCacheEnvVar = "CUBEFREE_CACHE";
inline constexpr const char* kDefaultCacheFile = "cubefree-cache.jsonl";

struct RunRecord {
  int schema = kCacheSchemaVersion;
  std::string timestamp;
  std::string command;
  std::string fingerprint;
  std::string tool_version = kToolVersion;
  Json payload;
};

Json to_json(const RunRecord& record);

/// $CUBEFREE_CACHE if set, else ./cubefree-cache.jsonl.
std::filesystem::path default_cache_path();

/// Append-only JSONL store of run records, one object per line.
///
/// Unreadable lines and records from another schema version are skipped;
/// skipped lines are reported through the warning callback.
class ResultCache {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit ResultCache(std::filesystem::path path, WarningSink warn = {});

  const std::filesystem::path& path() const { return path_; }

  /// Most recent record with this fingerprint.
  std::optional<RunRecord> lookup(const std::string& fingerprint) const;
  std::vector<RunRecord> records() const;
  void append(const RunRecord& record);
  void clear();

 private:
  std::filesystem::path path_;
  WarningSink warn_;
  std::mutex write_mutex_;
};

/// UTC timestamp in ISO 8601.
std::string utc_timestamp();

}  // namespace cubefree
