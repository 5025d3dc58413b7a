#include "lexcourt/pipeline/config.hpp"

#include <set>

#include "lexcourt/errors.hpp"
#include "lexcourt/pipeline/toml.hpp"
#include "lexcourt/util/digest.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace lexcourt::pipeline {

using nlohmann::json;

namespace {

// Pulls typed fields out of one table, remembering which keys were read and
// recording every problem under its dotted path.
class Table {
 public:
  Table(const json* obj, std::string path, std::vector<std::string>& problems)
      : obj_(obj), path_(std::move(path)), problems_(problems) {}

  Table sub(const std::string& key) {
    known_.insert(key);
    if (!obj_ || !obj_->contains(key)) return Table(nullptr, where(key), problems_);
    const auto& v = obj_->at(key);
    if (!v.is_object()) {
      problems_.push_back(where(key) + ": expected a table");
      return Table(nullptr, where(key), problems_);
    }
    return Table(&v, where(key), problems_);
  }

  void integer(const std::string& key, int& out, int min, int max = std::numeric_limits<int>::max()) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer()) return bad(key, "expected an integer");
    const auto x = v->get<long long>();
    if (x < min || x > max) return bad(key, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    out = static_cast<int>(x);
  }

  void unsigned64(const std::string& key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer() || v->get<long long>() < 0) return bad(key, "expected a non-negative integer");
    out = v->get<std::uint64_t>();
  }

  void real(const std::string& key, double& out, double min, double max) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) return bad(key, "expected a number");
    const double x = v->get<double>();
    if (x < min || x > max) return bad(key, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    out = x;
  }

  void boolean(const std::string& key, bool& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_boolean()) return bad(key, "expected true or false");
    out = v->get<bool>();
  }

  void string(const std::string& key, std::string& out, const std::set<std::string>& allowed = {}) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) return bad(key, "expected a string");
    const auto s = v->get<std::string>();
    if (!allowed.empty() && !allowed.count(s)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      return bad(key, "must be one of " + list);
    }
    out = s;
  }

  void reject_unknown() const {
    if (!obj_) return;
    for (auto it = obj_->begin(); it != obj_->end(); ++it)
      if (!known_.count(it.key())) problems_.push_back(where(it.key()) + ": unknown key");
  }

  bool present() const { return obj_ != nullptr; }
  const json* raw() const { return obj_; }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json* take(const std::string& key) {
    known_.insert(key);
    if (!obj_) return nullptr;
    auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }
  void bad(const std::string& key, const std::string& why) { problems_.push_back(where(key) + ": " + why); }

  const json* obj_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> known_;
};

std::string default_model(const std::string& role, const std::string& kind) {
  if (kind != "simulated") return "";
  return role == "embedding" ? "sim-embed" : "sim-chat";
}

}  // namespace

json ProviderSettings::to_json() const {
  return {{"kind", kind},
          {"model_id", model_id},
          {"endpoint_url", endpoint_url},
          {"api_key_env_var", api_key_env_var},
          {"max_retries", max_retries},
          {"requests_per_minute", requests_per_minute},
          {"timeout_seconds", timeout_seconds},
          {"temperature", temperature},
          {"max_output_tokens", max_output_tokens},
          {"embedding_dimension", embedding_dimension}};
}

RunConfig::RunConfig() {
  for (const auto& role : kRoles) {
    ProviderSettings p;
    p.model_id = default_model(role, p.kind);
    providers[role] = p;
  }
}

json RunConfig::to_json() const {
  json provs = json::object();
  for (const auto& [role, p] : providers) provs[role] = p.to_json();
  return {{"run_id", run_id},
          {"runs_dir", runs_dir},
          {"seed", seed},
          {"rounds", rounds},
          {"refine_iterations", refine_iterations},
          {"workers", workers},
          {"clock", clock},
          {"corpus", {{"articles_dir", articles_dir}, {"cases_dir", cases_dir}}},
          {"cases",
           {{"source", case_source},
            {"file", cases_file},
            {"count", case_count},
            {"min_articles", min_articles},
            {"max_articles", max_articles},
            {"max_attempts", max_attempts}}},
          {"retrieval",
           {{"case_bm25_k", retrieval.case_bm25_k},
            {"article_dense_k", retrieval.article_dense_k},
            {"train_neg_k", retrieval.train_neg_k},
            {"precedent_rerank_m", retrieval.precedent_rerank_m}}},
          {"lawyer", {{"top_articles", lawyer_top_articles}, {"context_chars", lawyer_context_chars}}},
          {"judge", {{"candidate_articles", judge_candidate_articles}}},
          {"metrics",
           {{"term_tolerance_months", tolerance.term_months}, {"fine_tolerance", tolerance.fine_amount}}},
          {"ablation",
           {{"no_argument", ablation.no_argument},
            {"no_evolution", ablation.no_evolution},
            {"no_retrieval", ablation.no_retrieval}}},
          {"providers", std::move(provs)}};
}

json RunConfig::experiment_json() const {
  auto j = to_json();
  j.erase("run_id");
  j.erase("runs_dir");
  return j;
}

// nlohmann objects are key-sorted, so the dump is canonical.
std::string RunConfig::digest() const { return sha256_hex(experiment_json().dump()); }

RunConfig config_from_json(const json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) throw ConfigError({"configuration must be a table"});
  RunConfig c;
  Table top(&doc, "", problems);
  top.string("run_id", c.run_id);
  if (c.run_id.empty() || c.run_id.find_first_of("/\\") != std::string::npos || c.run_id == "." || c.run_id == "..")
    problems.push_back("run_id: must be a plain non-empty name");
  top.string("runs_dir", c.runs_dir);
  top.unsigned64("seed", c.seed);
  top.integer("rounds", c.rounds, 1, 20);
  top.integer("refine_iterations", c.refine_iterations, 0, 20);
  top.integer("workers", c.workers, 1, 64);
  top.string("clock", c.clock, {"simulated", "system"});

  auto corpus = top.sub("corpus");
  corpus.string("articles_dir", c.articles_dir);
  corpus.string("cases_dir", c.cases_dir);
  corpus.reject_unknown();

  auto cases = top.sub("cases");
  cases.string("source", c.case_source, {"forge", "file"});
  cases.string("file", c.cases_file);
  cases.integer("count", c.case_count, 1);
  cases.integer("min_articles", c.min_articles, 2, 5);
  cases.integer("max_articles", c.max_articles, 2, 5);
  cases.integer("max_attempts", c.max_attempts, 1);
  cases.reject_unknown();
  if (c.min_articles > c.max_articles) problems.push_back("cases.min_articles: exceeds cases.max_articles");
  if (c.case_source == "file" && c.cases_file.empty()) problems.push_back("cases.file: required when source = \"file\"");

  auto retrieval = top.sub("retrieval");
  retrieval.integer("case_bm25_k", c.retrieval.case_bm25_k, 1);
  retrieval.integer("article_dense_k", c.retrieval.article_dense_k, 1);
  retrieval.integer("train_neg_k", c.retrieval.train_neg_k, 1);
  retrieval.integer("precedent_rerank_m", c.retrieval.precedent_rerank_m, 1);
  retrieval.reject_unknown();

  auto lawyer = top.sub("lawyer");
  lawyer.integer("top_articles", c.lawyer_top_articles, 0);
  lawyer.integer("context_chars", c.lawyer_context_chars, 0);
  lawyer.reject_unknown();

  auto judge = top.sub("judge");
  judge.integer("candidate_articles", c.judge_candidate_articles, 1);
  judge.reject_unknown();

  auto metrics = top.sub("metrics");
  metrics.integer("term_tolerance_months", c.tolerance.term_months, 0);
  metrics.real("fine_tolerance", c.tolerance.fine_amount, 0.0, 1e12);
  metrics.reject_unknown();

  auto ablation = top.sub("ablation");
  ablation.boolean("no_argument", c.ablation.no_argument);
  ablation.boolean("no_evolution", c.ablation.no_evolution);
  ablation.boolean("no_retrieval", c.ablation.no_retrieval);
  ablation.reject_unknown();

  auto providers = top.sub("providers");
  if (providers.present()) {
    const std::set<std::string> roles(kRoles.begin(), kRoles.end());
    for (auto it = providers.raw()->begin(); it != providers.raw()->end(); ++it)
      if (!roles.count(it.key())) problems.push_back(providers.where(it.key()) + ": unknown role");
  }
  for (const auto& role : kRoles) {
    auto t = providers.sub(role);
    auto& p = c.providers[role];
    t.string("kind", p.kind, {"simulated", "http"});
    p.model_id = default_model(role, p.kind);
    t.string("model_id", p.model_id);
    t.string("endpoint_url", p.endpoint_url);
    t.string("api_key_env_var", p.api_key_env_var);
    t.integer("max_retries", p.max_retries, 0, 20);
    t.integer("requests_per_minute", p.requests_per_minute, 1);
    t.integer("timeout_seconds", p.timeout_seconds, 1);
    t.real("temperature", p.temperature, 0.0, 2.0);
    t.integer("max_output_tokens", p.max_output_tokens, 1);
    t.integer("embedding_dimension", p.embedding_dimension, 1, 4096);
    t.reject_unknown();
    if (p.kind == "http") {
      if (p.endpoint_url.empty()) problems.push_back(t.where("endpoint_url") + ": required for http providers");
      if (p.api_key_env_var.empty()) problems.push_back(t.where("api_key_env_var") + ": required for http providers");
      if (p.model_id.empty()) problems.push_back(t.where("model_id") + ": required for http providers");
    }
  }
  top.reject_unknown();
  if (!problems.empty()) throw ConfigError(problems);
  return c;
}

RunConfig parse_config(const std::string& toml_text) { return config_from_json(parse_toml(toml_text)); }

RunConfig validate_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError({path.string() + ": no such file"});
  auto c = parse_config(jsonl::read_text(path));
  const auto base = path.parent_path();
  const auto anchor = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).lexically_normal().string();
  };
  anchor(c.runs_dir);
  anchor(c.articles_dir);
  anchor(c.cases_dir);
  anchor(c.cases_file);
  return c;
}

std::string default_config_toml() {
  return R"(# Run configuration. Every key is optional; these are the defaults.
run_id = "run"
runs_dir = "runs"
seed = 42
rounds = 3
refine_iterations = 3
workers = 1
clock = "simulated"          # "system" for wall-clock timestamps and rate limiting

[corpus]
articles_dir = "corpus"      # directory holding articles.seg.jsonl
cases_dir = ""               # directory holding cases.seg.jsonl (precedents)

[cases]
source = "forge"             # or "file"
file = ""
count = 2
min_articles = 2
max_articles = 5
max_attempts = 5

[retrieval]
case_bm25_k = 100
article_dense_k = 200
train_neg_k = 50
precedent_rerank_m = 1

[lawyer]
top_articles = 5
context_chars = 6000

[judge]
candidate_articles = 40

[metrics]
term_tolerance_months = 0
fine_tolerance = 0.0

[ablation]
no_argument = false
no_evolution = false
no_retrieval = false

# One table per role: lawyer_plaintiff, lawyer_defendant, evaluator, judge,
# case_generator, embedding, metrics.
# [providers.judge]
# kind = "http"
# model_id = "gpt-4o"
# endpoint_url = "https://api.openai.com/v1"
# api_key_env_var = "OPENAI_API_KEY"
)";
}

}  // namespace lexcourt::pipeline
