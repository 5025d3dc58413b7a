#include "lexcourt/pipeline/run.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "lexcourt/adjudicator/judge.hpp"
#include "lexcourt/casegen/forge.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/courtroom/courtroom.hpp"
#include "lexcourt/evolution/dpo.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/metrics/report.hpp"
#include "lexcourt/pipeline/simulated.hpp"
#include "lexcourt/retrieval/case_retriever.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace lexcourt::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(StageStatus s) {
  switch (s) {
    case StageStatus::pending: return "pending";
    case StageStatus::running: return "running";
    case StageStatus::complete: return "complete";
    case StageStatus::failed: return "failed";
    case StageStatus::skipped: return "skipped";
  }
  return "pending";
}

StageStatus stage_status_from_string(const std::string& s) {
  for (auto st : {StageStatus::pending, StageStatus::running, StageStatus::complete, StageStatus::failed,
                  StageStatus::skipped})
    if (to_string(st) == s) return st;
  throw PreconditionError("unknown stage status '" + s + "'");
}

RunManifest RunManifest::fresh(const RunConfig& config) {
  RunManifest m;
  m.run_id = config.run_id;
  m.config_digest = config.digest();
  m.config = config.experiment_json();
  for (const auto& name : kStages) {
    StageRecord r;
    r.name = name;
    m.stages.push_back(std::move(r));
  }
  return m;
}

StageRecord& RunManifest::stage(const std::string& name) {
  for (auto& s : stages)
    if (s.name == name) return s;
  throw PreconditionError("manifest has no stage '" + name + "'");
}

const StageRecord& RunManifest::stage(const std::string& name) const {
  return const_cast<RunManifest*>(this)->stage(name);
}

bool RunManifest::complete() const {
  for (const auto& s : stages)
    if (!s.done()) return false;
  return true;
}

bool RunManifest::failed() const {
  for (const auto& s : stages)
    if (s.status == StageStatus::failed) return true;
  return false;
}

json RunManifest::to_json() const {
  json st = json::array();
  for (const auto& s : stages)
    st.push_back({{"name", s.name},
                  {"status", to_string(s.status)},
                  {"started", s.started},
                  {"finished", s.finished},
                  {"seconds", s.seconds},
                  {"artifacts", s.artifacts},
                  {"error", s.error},
                  {"details", s.details}});
  return {{"run_id", run_id},     {"config_digest", config_digest}, {"config", config},
          {"stages", std::move(st)}, {"call_counts", call_counts},     {"warnings", warnings}};
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.run_id = j.at("run_id").get<std::string>();
  m.config_digest = j.at("config_digest").get<std::string>();
  m.config = j.value("config", json::object());
  for (const auto& s : j.at("stages")) {
    StageRecord r;
    r.name = s.at("name").get<std::string>();
    r.status = stage_status_from_string(s.at("status").get<std::string>());
    r.started = s.value("started", "");
    r.finished = s.value("finished", "");
    r.seconds = s.value("seconds", 0.0);
    r.artifacts = s.value("artifacts", std::vector<std::string>{});
    r.error = s.value("error", "");
    r.details = s.value("details", json::object());
    m.stages.push_back(std::move(r));
  }
  m.call_counts = j.value("call_counts", std::map<std::string, std::size_t>{});
  m.warnings = j.value("warnings", std::vector<std::string>{});
  return m;
}

void RunManifest::save(const fs::path& path) const { jsonl::write_text_atomic(path, to_json().dump(2) + "\n"); }

RunManifest RunManifest::load(const fs::path& path) { return from_json(json::parse(jsonl::read_text(path))); }

fs::path run_directory(const RunConfig& config) { return fs::path(config.runs_dir) / config.run_id; }

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
// exception is rethrown once all threads have stopped.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  for (std::size_t w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; !stop && (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
          stop = true;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::shared_ptr<gateway::Provider> default_provider(const ProviderSettings& s, const std::vector<std::string>& fallback) {
  if (s.kind == "http") {
    gateway::ProviderConfig pc;
    pc.endpoint_url = s.endpoint_url;
    pc.api_key_env_var = s.api_key_env_var;
    pc.max_retries = s.max_retries;
    pc.requests_per_minute = s.requests_per_minute;
    pc.timeout_seconds = s.timeout_seconds;
    return std::make_shared<gateway::HttpProvider>(pc);
  }
  auto mock = gateway::MockProvider::pure(simulated_responder(fallback));
  mock->with_embedder(gateway::MockProvider::hash_embedder(s.embedding_dimension));
  return mock;
}

class Run {
 public:
  Run(const RunConfig& config, const RunOptions& options)
      : config_(config), options_(options), dir_(run_directory(config)) {}

  RunManifest execute() {
    fs::create_directories(dir_);
    const auto manifest_path = dir_ / "manifest.json";
    if (fs::exists(manifest_path)) {
      manifest_ = RunManifest::load(manifest_path);
      if (manifest_.config_digest != config_.digest())
        throw ConfigError({dir_.string() + " was created with config digest " + manifest_.config_digest +
                           ", this config has " + config_.digest()});
    } else {
      manifest_ = RunManifest::fresh(config_);
    }
    if (config_.clock == "system") clock_ = std::make_shared<gateway::SystemClock>();
    else clock_ = std::make_shared<gateway::SimulatedClock>();
    log_ = std::make_shared<gateway::CallLog>(dir_ / "gateway.log");

    for (const auto& name : kStages) {
      auto& st = manifest_.stage(name);
      if (st.done()) continue;
      run_stage(st);
      refresh_counts();
      manifest_.save(manifest_path);
      if (st.status == StageStatus::failed) break;
      if (options_.stop_after && *options_.stop_after == name) break;
    }
    refresh_counts();
    manifest_.save(manifest_path);
    return manifest_;
  }

 private:
  void run_stage(StageRecord& st) {
    const double t0 = clock_->now();
    st.started = clock_->timestamp();
    st.status = StageStatus::running;
    st.error.clear();
    st.artifacts.clear();
    st.details = json::object();
    try {
      if (st.name == "forge") forge(st);
      else if (st.name == "trial") trial(st);
      else if (st.name == "evolve") evolve(st);
      else if (st.name == "judge") judge(st);
      else eval(st);
      if (st.status == StageStatus::running) st.status = StageStatus::complete;
    } catch (const std::exception& e) {
      st.status = StageStatus::failed;
      st.error = e.what();
    }
    st.finished = clock_->timestamp();
    st.seconds = clock_->now() - t0;
  }

  void refresh_counts() {
    manifest_.call_counts.clear();
    if (fs::exists(dir_ / "gateway.log"))
      for (const auto& r : gateway::CallLog::load(dir_ / "gateway.log")) ++manifest_.call_counts[r.role];
  }

  // --- shared resources, built on first use -------------------------------

  corpus::ArticleStore& articles() {
    if (!articles_) {
      articles_ = std::make_unique<corpus::ArticleStore>(corpus::ArticleStore::open(config_.articles_dir));
      if (articles_->empty())
        throw InsufficientCorpusError("article store " + config_.articles_dir + " holds no articles");
    }
    return *articles_;
  }

  gateway::Gateway& gw(const std::string& role) {
    std::lock_guard lock(gw_mu_);
    if (auto it = gateways_.find(role); it != gateways_.end()) return *it->second;
    const auto& s = config_.providers.at(role);
    std::shared_ptr<gateway::Provider> provider;
    if (options_.provider_factory) provider = options_.provider_factory(role, s);
    if (!provider) {
      std::vector<std::string> fallback;
      for (const auto& a : articles().all()) fallback.push_back(a.article_id);
      provider = default_provider(s, fallback);
    }
    gateway::GatewayOptions go;
    go.role = role;
    go.model_id = s.model_id;
    go.embedding_model_id = s.model_id;
    go.temperature = s.temperature;
    go.max_output_tokens = s.max_output_tokens;
    go.max_retries = s.max_retries;
    go.requests_per_minute = s.requests_per_minute;
    auto g = std::make_unique<gateway::Gateway>(provider, go, clock_, log_);
    return *gateways_.emplace(role, std::move(g)).first->second;
  }

  retrieval::CaseRetriever& retriever() {
    if (retriever_) return *retriever_;
    auto& embed = gw("embedding");
    vectors_ = std::make_unique<retrieval::ArticleVectorStore>(
        retrieval::ArticleVectorStore::build(articles(), embed, dir_ / "cache"));
    if (!config_.cases_dir.empty()) {
      cases_ = std::make_unique<corpus::CaseStore>(corpus::CaseStore::open(config_.cases_dir));
      if (!cases_->empty())
        case_index_ = std::make_unique<retrieval::CaseIndex>(retrieval::CaseIndex::build(*cases_));
    }
    retrieval::HybridOptions ho;
    ho.article_k = static_cast<std::size_t>(config_.retrieval.article_dense_k);
    ho.precedent.bm25_k = static_cast<std::size_t>(config_.retrieval.case_bm25_k);
    ho.precedent.rerank_m = static_cast<std::size_t>(config_.retrieval.precedent_rerank_m);
    retriever_ = std::make_unique<retrieval::HybridRetriever>(articles(), *vectors_, case_index_.get(), embed, ho);
    return *retriever_;
  }

  std::vector<LegalCase> cases() {
    const auto path = dir_ / "cases" / "cases.jsonl";
    if (!fs::exists(path)) throw PreconditionError("no cases at " + path.string() + "; the forge stage has not run");
    return load_cases(path.string());
  }

  fs::path trial_path(const std::string& id) const { return dir_ / "trials" / (id + ".json"); }
  fs::path judgment_path(const std::string& id) const { return dir_ / "judgments" / (id + ".json"); }

  // --- stages ---------------------------------------------------------------

  void forge(StageRecord& st) {
    fs::create_directories(dir_ / "cases");
    std::vector<json> rows;
    if (config_.case_source == "file") {
      for (const auto& c : load_cases(config_.cases_file)) rows.push_back(c.to_json());
      st.details["source"] = config_.cases_file;
    } else {
      casegen::ForgeOptions fo;
      fo.n_target = static_cast<std::size_t>(config_.case_count);
      fo.max_attempts_per_case = static_cast<std::size_t>(config_.max_attempts);
      fo.seed = config_.seed;
      fo.min_articles = static_cast<std::size_t>(config_.min_articles);
      fo.max_articles = static_cast<std::size_t>(config_.max_articles);
      auto result = casegen::forge_batch(articles(), gw("case_generator"), gw("evaluator"), fo);
      for (const auto& v : result.accepted) rows.push_back(v.legal_case.to_json());
      std::vector<json> rejections;
      for (const auto& r : result.rejections) rejections.push_back(r.to_json());
      jsonl::write_atomic(dir_ / "cases" / "rejections.jsonl", rejections);
      st.details["forge"] = result.stats.to_json();
      st.artifacts.push_back("cases/rejections.jsonl");
    }
    jsonl::write_atomic(dir_ / "cases" / "cases.jsonl", rows);
    st.artifacts.insert(st.artifacts.begin(), "cases/cases.jsonl");
    st.details["cases"] = rows.size();
  }

  void trial(StageRecord& st) {
    if (config_.ablation.no_argument) {
      st.status = StageStatus::skipped;
      st.details["reason"] = "no_argument";
      return;
    }
    const auto all = cases();
    fs::create_directories(dir_ / "trials");
    auto& retr = retriever();
    auto& plaintiff = gw("lawyer_plaintiff");
    auto& defendant = gw("lawyer_defendant");
    auto& evaluator = gw("evaluator");
    evolution::EvolutionOptions eo;
    eo.refine_iterations = config_.ablation.no_evolution ? 0 : config_.refine_iterations;
    courtroom::CourtroomOptions co;
    co.rounds = config_.rounds;
    co.top_articles = static_cast<std::size_t>(config_.lawyer_top_articles);
    co.context_chars = static_cast<std::size_t>(config_.lawyer_context_chars);

    std::atomic<std::size_t> resumed{0}, skipped{0};
    parallel_for(all.size(), config_.workers, [&](std::size_t i) {
      const auto& c = all[i];
      const auto path = trial_path(c.case_id);
      std::optional<courtroom::Transcript> prior;
      if (fs::exists(path)) {
        prior = courtroom::Transcript::load(path);
        if (prior->complete()) {
          ++skipped;
          return;
        }
        ++resumed;
      }
      courtroom::Courtroom court(plaintiff, defendant, retr, co);
      evolution::Evolver evolver(evaluator, eo);
      court.run_full_trial(c, &evolver, std::move(prior), [&](const courtroom::Transcript& t) { t.save(path); });
    });
    for (const auto& c : all) st.artifacts.push_back("trials/" + c.case_id + ".json");
    st.details = {{"transcripts", all.size()}, {"resumed", resumed.load()}, {"already_complete", skipped.load()},
                  {"refine_iterations", eo.refine_iterations}};
  }

  void evolve(StageRecord& st) {
    if (config_.ablation.no_argument) {
      st.status = StageStatus::skipped;
      st.details["reason"] = "no_argument";
      return;
    }
    const auto out = evolution::export_dpo_dir(dir_ / "trials");
    std::vector<json> rows;
    for (const auto& p : out.pairs) rows.push_back(p.to_json());
    fs::create_directories(dir_ / "pairs");
    jsonl::write_atomic(dir_ / "pairs" / "pairs.jsonl", rows);
    st.artifacts.push_back("pairs/pairs.jsonl");
    st.details = {{"pairs", out.pairs.size()},
                  {"zero_spread_turns", out.zero_spread_turns},
                  {"unscored_turns", out.unscored_turns}};
  }

  void judge(StageRecord& st) {
    const auto all = cases();
    fs::create_directories(dir_ / "judgments");
    auto& judge_gw = gw("judge");
    retrieval::CaseRetriever* retr = config_.ablation.no_retrieval ? nullptr : &retriever();
    adjudicator::JudgeOptions jo;
    jo.candidate_articles = static_cast<std::size_t>(config_.judge_candidate_articles);
    auto& store = articles();

    std::mutex mu;
    std::size_t dropped = 0;
    parallel_for(all.size(), config_.workers, [&](std::size_t i) {
      const auto& c = all[i];
      const auto path = judgment_path(c.case_id);
      if (fs::exists(path)) return;
      std::optional<courtroom::Transcript> transcript;
      if (!config_.ablation.no_argument) transcript = courtroom::Transcript::load(trial_path(c.case_id));
      const auto ctx = adjudicator::assemble_context(c, transcript ? &*transcript : nullptr, retr, jo);
      const auto out = adjudicator::render_judgment(ctx, judge_gw, store, jo);
      out.judgment.save(path);
      if (out.dropped_articles) {
        std::lock_guard lock(mu);
        dropped += out.dropped_articles;
        manifest_.warnings.push_back(c.case_id + ": judge named " + std::to_string(out.dropped_articles) +
                                     " article id(s) outside the corpus");
      }
    });
    for (const auto& c : all) st.artifacts.push_back("judgments/" + c.case_id + ".json");
    st.details = {{"judgments", all.size()},
                  {"dropped_articles", dropped},
                  {"no_argument", config_.ablation.no_argument},
                  {"no_retrieval", config_.ablation.no_retrieval},
                  {"candidate_articles", jo.candidate_articles}};
  }

  void eval(StageRecord& st) {
    const auto all = cases();
    std::vector<metrics::Prediction> predictions;
    for (const auto& c : all) predictions.push_back(metrics::prediction_from_judgment(adjudicator::Judgment::load(judgment_path(c.case_id))));
    metrics::ReportOptions ro;
    ro.tolerance = config_.tolerance;
    const auto report = metrics::build_report(predictions, all, &gw("metrics"), ro);
    fs::create_directories(dir_ / "report");
    jsonl::write_text_atomic(dir_ / "report" / "report.json", report.to_json().dump(2) + "\n");
    jsonl::write_text_atomic(dir_ / "report" / "report.txt", report.to_text());
    st.artifacts = {"report/report.json", "report/report.txt"};
    st.details = {{"articles_f1", report.articles.f1}, {"criminal_cases", report.criminal.n_cases},
                  {"civil_cases", report.civil_per_case.size()}};
  }

  const RunConfig& config_;
  const RunOptions& options_;
  fs::path dir_;
  RunManifest manifest_;
  std::shared_ptr<gateway::Clock> clock_;
  std::shared_ptr<gateway::CallLog> log_;
  std::mutex gw_mu_;
  std::map<std::string, std::unique_ptr<gateway::Gateway>> gateways_;
  std::unique_ptr<corpus::ArticleStore> articles_;
  std::unique_ptr<corpus::CaseStore> cases_;
  std::unique_ptr<retrieval::ArticleVectorStore> vectors_;
  std::unique_ptr<retrieval::CaseIndex> case_index_;
  std::unique_ptr<retrieval::CaseRetriever> retriever_;
};

}  // namespace

RunManifest run_pipeline(const RunConfig& config, const RunOptions& options) {
  if (options.stop_after) {
    bool known = false;
    for (const auto& s : kStages) known |= s == *options.stop_after;
    if (!known) throw PreconditionError("unknown stage '" + *options.stop_after + "'");
  }
  return Run(config, options).execute();
}

}  // namespace lexcourt::pipeline
