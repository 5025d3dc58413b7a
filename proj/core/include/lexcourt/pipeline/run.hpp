#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexcourt/gateway/provider.hpp"
#include "lexcourt/pipeline/config.hpp"

namespace lexcourt::pipeline {

// Stage order of a run.
inline const std::vector<std::string> kStages = {"forge", "trial", "evolve", "judge", "eval"};

enum class StageStatus { pending, running, complete, failed, skipped };

std::string to_string(StageStatus s);
StageStatus stage_status_from_string(const std::string& s);

struct StageRecord {
  std::string name;
  StageStatus status = StageStatus::pending;
  std::string started;
  std::string finished;
  double seconds = 0.0;
  std::vector<std::string> artifacts;  // relative to the run directory
  std::string error;
  nlohmann::json details = nlohmann::json::object();

  bool done() const noexcept { return status == StageStatus::complete || status == StageStatus::skipped; }
};

struct RunManifest {
  std::string run_id;
  std::string config_digest;
  nlohmann::json config;
  std::vector<StageRecord> stages;
  std::map<std::string, std::size_t> call_counts;  // gateway calls per role, whole log
  std::vector<std::string> warnings;

  static RunManifest fresh(const RunConfig& config);

  StageRecord& stage(const std::string& name);
  const StageRecord& stage(const std::string& name) const;
  bool complete() const;
  bool failed() const;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static RunManifest load(const std::filesystem::path& path);
};

using ProviderFactory =
    std::function<std::shared_ptr<gateway::Provider>(const std::string& role, const ProviderSettings& settings)>;

struct RunOptions {
  // End the run right after this stage, leaving later stages pending.
  std::optional<std::string> stop_after;
  // Overrides how each role's provider is built (tests inject faults here).
  ProviderFactory provider_factory;
};

std::filesystem::path run_directory(const RunConfig& config);

// Runs forge -> trial -> evolve -> judge -> eval under
// runs_dir/run_id/{cases,trials,pairs,judgments,report,cache}, with
// manifest.json and gateway.log beside them. Completed stages, transcripts
// and judgments found on disk are not redone. A failing stage is recorded
// as failed in the returned manifest; the error does not propagate.
// A run directory created under a different config digest is refused with
// a ConfigError.
RunManifest run_pipeline(const RunConfig& config, const RunOptions& options = {});

}  // namespace lexcourt::pipeline
