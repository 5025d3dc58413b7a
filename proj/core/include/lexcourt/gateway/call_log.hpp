#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lexcourt::gateway {

struct CallRecord {
  std::uint64_t call_index = 0;
  std::string timestamp;
  std::string kind;  // "chat" | "embed"
  std::string role;  // gateway role (lawyer_plaintiff, evaluator, ...)
  std::string task;
  nlohmann::json request;
  std::map<std::string, std::string> attributes;  // the request's hints, outside the wire body
  nlohmann::json response;  // null when the call failed
  std::string error;
  double latency_ms = 0.0;

  nlohmann::json to_json() const;
  static CallRecord from_json(const nlohmann::json& j);
};

// Shared, thread-safe, append-only log of every gateway call. Optionally
// mirrored to a JSONL file. Indices increase monotonically from 1 (or from
// one past the last record of an existing file, so resumed runs continue).
class CallLog {
 public:
  CallLog() = default;
  explicit CallLog(std::filesystem::path sink);

  // Assigns the next call index and records the call.
  std::uint64_t record(CallRecord rec);

  std::vector<CallRecord> records() const;
  std::size_t size() const;
  std::map<std::string, std::size_t> counts_by_role() const;
  std::size_t count(const std::string& role, const std::string& task) const;

  static std::vector<CallRecord> load(const std::filesystem::path& path);

 private:
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> sink_path_;
  std::ofstream sink_;
  std::uint64_t next_index_ = 1;
  std::vector<CallRecord> records_;
};

}  // namespace lexcourt::gateway
