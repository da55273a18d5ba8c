#include "cubefree/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

namespace cubefree {

Json to_json(const RunRecord& r) {
  return {{"schema", r.schema},           {"timestamp", r.timestamp},
          {"command", r.command},         {"fingerprint", r.fingerprint},
          {"tool_version", r.tool_version}, {"payload", r.payload}};
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv(kCacheEnvVar); env && *env) return env;
  return kDefaultCacheFile;
}

ResultCache::ResultCache(std::filesystem::path path, WarningSink warn)
    : path_(std::move(path)), warn_(std::move(warn)) {}

std::vector<RunRecord> ResultCache::records() const {
  std::vector<RunRecord> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("schema") || !j["schema"].is_number_integer() ||
        !j.contains("fingerprint") || !j["fingerprint"].is_string() || !j.contains("payload")) {
      if (warn_) warn_(path_.string() + ":" + std::to_string(line_no) + ": skipping corrupt cache line");
      continue;
    }
    if (j["schema"].get<int>() != kCacheSchemaVersion) continue;
    RunRecord r;
    r.schema = j["schema"].get<int>();
    r.timestamp = j.value("timestamp", "");
    r.command = j.value("command", "");
    r.fingerprint = j["fingerprint"].get<std::string>();
    r.tool_version = j.value("tool_version", "");
    r.payload = j["payload"];
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<RunRecord> ResultCache::lookup(const std::string& fingerprint) const {
  std::optional<RunRecord> found;
  for (auto& r : records()) {
    if (r.fingerprint == fingerprint && r.tool_version == kToolVersion) found = std::move(r);
  }
  return found;
}

void ResultCache::append(const RunRecord& record) {
  std::lock_guard lock(write_mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string() + " for append");
  out << to_json(record).dump() << '\n';
}

void ResultCache::clear() {
  std::lock_guard lock(write_mutex_);
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace cubefree
