#include "lexcourt/gateway/call_log.hpp"

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace lexcourt::gateway {

nlohmann::json CallRecord::to_json() const {
  nlohmann::json j = {{"call_index", call_index}, {"timestamp", timestamp}, {"kind", kind},
                      {"role", role},             {"task", task},           {"request", request},
                      {"response", response},     {"latency_ms", latency_ms}};
  if (!attributes.empty()) j["attributes"] = attributes;
  if (!error.empty()) j["error"] = error;
  return j;
}

CallRecord CallRecord::from_json(const nlohmann::json& j) {
  CallRecord r;
  r.call_index = j.at("call_index").get<std::uint64_t>();
  r.timestamp = j.value("timestamp", "");
  r.kind = j.at("kind").get<std::string>();
  r.role = j.value("role", "");
  r.task = j.value("task", "");
  r.request = j.value("request", nlohmann::json());
  r.attributes = j.value("attributes", std::map<std::string, std::string>{});
  r.response = j.value("response", nlohmann::json());
  r.error = j.value("error", "");
  r.latency_ms = j.value("latency_ms", 0.0);
  return r;
}

CallLog::CallLog(std::filesystem::path sink) : sink_path_(std::move(sink)) {
  if (sink_path_->has_parent_path()) std::filesystem::create_directories(sink_path_->parent_path());
  if (std::filesystem::exists(*sink_path_)) {
    for (auto& line : jsonl::read(*sink_path_)) {
      auto rec = CallRecord::from_json(line.value);
      next_index_ = std::max(next_index_, rec.call_index + 1);
      records_.push_back(std::move(rec));
    }
  }
  sink_.open(*sink_path_, std::ios::binary | std::ios::app);
  if (!sink_) throw PreconditionError("cannot open call log " + sink_path_->string());
}

std::uint64_t CallLog::record(CallRecord rec) {
  std::lock_guard lock(mu_);
  rec.call_index = next_index_++;
  if (sink_.is_open()) {
    sink_ << rec.to_json().dump() << '\n';
    sink_.flush();
  }
  const auto idx = rec.call_index;
  records_.push_back(std::move(rec));
  return idx;
}

std::vector<CallRecord> CallLog::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::size_t CallLog::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::map<std::string, std::size_t> CallLog::counts_by_role() const {
  std::lock_guard lock(mu_);
  std::map<std::string, std::size_t> out;
  for (const auto& r : records_) ++out[r.role];
  return out;
}

std::size_t CallLog::count(const std::string& role, const std::string& task) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& r : records_)
    if ((role.empty() || r.role == role) && (task.empty() || r.task == task)) ++n;
  return n;
}

std::vector<CallRecord> CallLog::load(const std::filesystem::path& path) {
  std::vector<CallRecord> out;
  for (auto& line : jsonl::read(path)) out.push_back(CallRecord::from_json(line.value));
  return out;
}

}  // namespace lexcourt::gateway
