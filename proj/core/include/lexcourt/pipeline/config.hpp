#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexcourt/metrics/scores.hpp"

namespace lexcourt::pipeline {

// Roles a run wires a gateway for.
inline const std::vector<std::string> kRoles = {"lawyer_plaintiff", "lawyer_defendant", "evaluator", "judge",
                                                "case_generator",   "embedding",        "metrics"};

struct ProviderSettings {
  std::string kind = "simulated";  // "simulated" (in-process mock) | "http"
  std::string model_id;            // defaults per kind
  std::string endpoint_url;
  std::string api_key_env_var;
  int max_retries = 2;
  int requests_per_minute = 60;
  int timeout_seconds = 60;
  double temperature = 0.7;
  int max_output_tokens = 2048;
  int embedding_dimension = 16;  // simulated embeddings only

  nlohmann::json to_json() const;
};

struct RetrievalCutoffs {
  int case_bm25_k = 100;
  int article_dense_k = 200;
  int train_neg_k = 50;
  int precedent_rerank_m = 1;
};

struct AblationFlags {
  bool no_argument = false;
  bool no_evolution = false;
  bool no_retrieval = false;
};

struct RunConfig {
  std::string run_id = "run";
  std::string runs_dir = "runs";
  std::uint64_t seed = 42;
  int rounds = 3;
  int refine_iterations = 3;
  int workers = 1;
  std::string clock = "simulated";  // "simulated" | "system"

  std::string articles_dir = "corpus";  // ArticleStore directory
  std::string cases_dir;                // CaseStore directory for precedents; empty = none

  std::string case_source = "forge";  // "forge" | "file"
  std::string cases_file;             // JSONL of cases when case_source = "file"
  int case_count = 2;
  int min_articles = 2;
  int max_articles = 5;
  int max_attempts = 5;

  RetrievalCutoffs retrieval;
  int lawyer_top_articles = 5;
  int lawyer_context_chars = 6000;
  int judge_candidate_articles = 40;
  metrics::MatchTolerance tolerance;
  AblationFlags ablation;
  std::map<std::string, ProviderSettings> providers;  // one per kRoles entry

  RunConfig();

  // Every setting, defaults included, in the config-file layout.
  nlohmann::json to_json() const;
  // to_json() without run_id and runs_dir: what the run computes, not
  // where it is stored.
  nlohmann::json experiment_json() const;
  // SHA-256 of the canonical experiment_json(), so the same experiment
  // under another name or location keeps its digest.
  std::string digest() const;
};

// Builds a config from a parsed document. Unknown keys, wrong types and
// out-of-range values are collected and raised as one ConfigError whose
// entries name the offending key path.
RunConfig config_from_json(const nlohmann::json& doc);

RunConfig parse_config(const std::string& toml_text);

// Reads and validates a config file. Relative directories and files in it
// resolve against the file's own directory.
RunConfig validate_config(const std::filesystem::path& path);

// The defaults as a commented config file.
std::string default_config_toml();

}  // namespace lexcourt::pipeline
