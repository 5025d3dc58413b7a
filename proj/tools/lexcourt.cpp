// lexcourt: command-line front end for corpus ingest, case forging, trials,
// preference export, retrieval, judging, evaluation and full runs.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 stage failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "lexcourt/adjudicator/judge.hpp"
#include "lexcourt/casegen/forge.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/courtroom/courtroom.hpp"
#include "lexcourt/evolution/dpo.hpp"
#include "lexcourt/metrics/report.hpp"
#include "lexcourt/pipeline/config.hpp"
#include "lexcourt/pipeline/run.hpp"
#include "lexcourt/pipeline/simulated.hpp"
#include "lexcourt/retrieval/case_retriever.hpp"
#include "lexcourt/retrieval/training.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace fs = std::filesystem;
using namespace lexcourt;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitFailed = 3;

// Gateways for one-off commands. Provider settings come from --config when
// given, otherwise every role is simulated.
class Env {
 public:
  Env(const std::string& config_path, const std::string& log_path) {
    if (!config_path.empty()) config_ = pipeline::validate_config(config_path);
    if (config_.clock == "system") clock_ = std::make_shared<gateway::SystemClock>();
    else clock_ = std::make_shared<gateway::SimulatedClock>();
    log_ = log_path.empty() ? std::make_shared<gateway::CallLog>() : std::make_shared<gateway::CallLog>(log_path);
  }

  const pipeline::RunConfig& config() const { return config_; }

  gateway::Gateway& gw(const std::string& role, const corpus::ArticleStore* articles = nullptr) {
    if (auto it = gateways_.find(role); it != gateways_.end()) return *it->second;
    const auto& s = config_.providers.at(role);
    std::shared_ptr<gateway::Provider> provider;
    if (s.kind == "http") {
      gateway::ProviderConfig pc;
      pc.endpoint_url = s.endpoint_url;
      pc.api_key_env_var = s.api_key_env_var;
      pc.max_retries = s.max_retries;
      pc.requests_per_minute = s.requests_per_minute;
      pc.timeout_seconds = s.timeout_seconds;
      provider = std::make_shared<gateway::HttpProvider>(pc);
    } else {
      std::vector<std::string> fallback;
      if (articles)
        for (const auto& a : articles->all()) fallback.push_back(a.article_id);
      auto mock = gateway::MockProvider::pure(pipeline::simulated_responder(fallback));
      mock->with_embedder(gateway::MockProvider::hash_embedder(s.embedding_dimension));
      provider = mock;
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

 private:
  pipeline::RunConfig config_;
  std::shared_ptr<gateway::Clock> clock_;
  std::shared_ptr<gateway::CallLog> log_;
  std::map<std::string, std::unique_ptr<gateway::Gateway>> gateways_;
};

// Article vectors, optional case index and the hybrid retriever over them.
struct RetrievalKit {
  std::unique_ptr<retrieval::ArticleVectorStore> vectors;
  std::unique_ptr<corpus::CaseStore> cases;
  std::unique_ptr<retrieval::CaseIndex> index;
  std::unique_ptr<retrieval::HybridRetriever> retriever;

  RetrievalKit(const corpus::ArticleStore& articles, const std::string& case_store, const std::string& cache_dir,
               Env& env) {
    auto& embed = env.gw("embedding");
    std::optional<fs::path> cache;
    if (!cache_dir.empty()) cache = cache_dir;
    vectors = std::make_unique<retrieval::ArticleVectorStore>(retrieval::ArticleVectorStore::build(articles, embed, cache));
    if (!case_store.empty()) {
      cases = std::make_unique<corpus::CaseStore>(corpus::CaseStore::open(case_store));
      if (!cases->empty()) index = std::make_unique<retrieval::CaseIndex>(retrieval::CaseIndex::build(*cases));
    }
    const auto& cfg = env.config();
    retrieval::HybridOptions ho;
    ho.article_k = static_cast<std::size_t>(cfg.retrieval.article_dense_k);
    ho.precedent.bm25_k = static_cast<std::size_t>(cfg.retrieval.case_bm25_k);
    ho.precedent.rerank_m = static_cast<std::size_t>(cfg.retrieval.precedent_rerank_m);
    retriever = std::make_unique<retrieval::HybridRetriever>(articles, *vectors, index.get(), embed, ho);
  }
};

LegalCase find_case(const std::string& cases_file, const std::string& id) {
  for (auto& c : load_cases(cases_file))
    if (c.case_id == id) return c;
  throw PreconditionError("case " + id + " not found in " + cases_file);
}

void write_jsonl(const std::string& path, const std::vector<json>& rows) {
  if (path.empty() || path == "-") {
    for (const auto& r : rows) std::cout << r.dump() << "\n";
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  jsonl::write_atomic(path, rows);
}

std::vector<std::size_t> parse_ks(const std::string& list) {
  std::vector<std::size_t> ks;
  std::stringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    std::size_t used = 0;
    long long k = -1;
    try {
      k = std::stoll(tok, &used);
    } catch (const std::exception&) {
    }
    if (k <= 0 || used != tok.size()) throw PreconditionError("--ks expects positive integers, got '" + tok + "'");
    ks.push_back(static_cast<std::size_t>(k));
  }
  return ks;
}

courtroom::CourtroomOptions court_options(const pipeline::RunConfig& cfg, int rounds) {
  courtroom::CourtroomOptions co;
  co.rounds = rounds > 0 ? rounds : cfg.rounds;
  co.top_articles = static_cast<std::size_t>(cfg.lawyer_top_articles);
  co.context_chars = static_cast<std::size_t>(cfg.lawyer_context_chars);
  return co;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexcourt: simulated courtroom debate, self-refinement and judgment evaluation"};
  app.require_subcommand(1);
  std::string config_path, log_path;
  app.add_option("--config", config_path, "Run config (TOML) supplying provider settings and cutoffs");
  app.add_option("--log", log_path, "Append every gateway call to this JSONL file");

  int exit_code = 0;

  // corpus ---------------------------------------------------------------
  auto* corpus_cmd = app.add_subcommand("corpus", "Article and case corpora");
  corpus_cmd->require_subcommand(1);
  std::string store_dir, input_file, rules_file;
  bool strict_articles = false;
  auto* ingest_articles = corpus_cmd->add_subcommand("ingest-articles", "Add statute articles from a JSONL file");
  ingest_articles->add_option("--store", store_dir, "Article store directory")->required();
  ingest_articles->add_option("path", input_file, "Articles JSONL")->required()->check(CLI::ExistingFile);
  ingest_articles->callback([&] {
    auto store = corpus::ArticleStore::open(store_dir);
    const auto n = store.ingest_file(input_file);
    std::cout << "ingested " << n << " articles (" << store.size() << " in store)\n";
  });
  auto* ingest_cases = corpus_cmd->add_subcommand("ingest-cases", "Add judged cases (precedents) from a JSONL file");
  ingest_cases->add_option("--store", store_dir, "Case store directory")->required();
  ingest_cases->add_option("path", input_file, "Cases JSONL")->required()->check(CLI::ExistingFile);
  ingest_cases->add_option("--redact", rules_file, "Redaction rules JSONL ({pattern, replacement})")
      ->check(CLI::ExistingFile);
  ingest_cases->add_flag("--strict-articles", strict_articles, "Reject cases citing articles absent from --articles");
  std::string articles_for_cases;
  ingest_cases->add_option("--articles", articles_for_cases, "Article store used by --strict-articles");
  ingest_cases->callback([&] {
    std::vector<corpus::RedactionRule> rules;
    if (!rules_file.empty()) rules = corpus::load_redaction_rules(rules_file);
    auto store = corpus::CaseStore::open(store_dir);
    std::optional<corpus::ArticleStore> articles;
    if (strict_articles) {
      if (articles_for_cases.empty()) throw PreconditionError("--strict-articles needs --articles");
      articles = corpus::ArticleStore::open(articles_for_cases);
    }
    const auto n = store.ingest_file(input_file, rules, articles ? &*articles : nullptr);
    std::cout << "ingested " << n << " cases (" << store.size() << " in store)\n";
  });

  // forge ----------------------------------------------------------------
  auto* forge_cmd = app.add_subcommand("forge", "Generate and vet synthetic cases");
  std::string articles_dir, out_path;
  std::size_t n_cases = 1, max_attempts = 5;
  std::uint64_t seed = 42;
  forge_cmd->add_option("--articles", articles_dir, "Article store directory")->required();
  forge_cmd->add_option("--n", n_cases, "Cases to accept")->check(CLI::PositiveNumber);
  forge_cmd->add_option("--max-attempts", max_attempts, "Attempts per case slot")->check(CLI::PositiveNumber);
  forge_cmd->add_option("--seed", seed, "Sampling seed");
  forge_cmd->add_option("--out", out_path, "Accepted cases JSONL (stdout when omitted)");
  forge_cmd->callback([&] {
    Env env(config_path, log_path);
    auto articles = corpus::ArticleStore::open(articles_dir);
    casegen::ForgeOptions fo;
    fo.n_target = n_cases;
    fo.max_attempts_per_case = max_attempts;
    fo.seed = seed;
    auto result = casegen::forge_batch(articles, env.gw("case_generator", &articles), env.gw("evaluator"), fo);
    std::vector<json> rows;
    for (const auto& v : result.accepted) rows.push_back(v.legal_case.to_json());
    write_jsonl(out_path, rows);
    std::cerr << result.stats.to_json().dump() << "\n";
  });

  // trial ----------------------------------------------------------------
  auto* trial_cmd = app.add_subcommand("trial", "Courtroom debates");
  trial_cmd->require_subcommand(1);
  std::string case_id, cases_file, case_store, trials_dir, cache_dir;
  int rounds = 0, refine = -1;
  const auto trial_options = [&](CLI::App* cmd) {
    cmd->add_option("--case", case_id, "Case id")->required();
    cmd->add_option("--cases", cases_file, "Cases JSONL")->required()->check(CLI::ExistingFile);
    cmd->add_option("--articles", articles_dir, "Article store directory")->required();
    cmd->add_option("--case-store", case_store, "Case store for precedents");
    cmd->add_option("--out", trials_dir, "Transcript directory")->required();
    cmd->add_option("--cache", cache_dir, "Article vector cache directory");
    cmd->add_option("--rounds", rounds, "Debate rounds (config default 3)");
    cmd->add_option("--refine", refine, "Refinement iterations per turn (config default 3)");
  };
  auto* trial_run = trial_cmd->add_subcommand("run", "Run a full trial");
  auto* trial_resume = trial_cmd->add_subcommand("resume", "Continue an interrupted trial");
  trial_options(trial_run);
  trial_options(trial_resume);
  const auto do_trial = [&](bool resume) {
    Env env(config_path, log_path);
    auto articles = corpus::ArticleStore::open(articles_dir);
    const auto c = find_case(cases_file, case_id);
    RetrievalKit kit(articles, case_store, cache_dir, env);
    const auto path = fs::path(trials_dir) / (case_id + ".json");
    fs::create_directories(trials_dir);
    std::optional<courtroom::Transcript> prior;
    if (resume) {
      if (!fs::exists(path)) throw PreconditionError("no transcript to resume at " + path.string());
      prior = courtroom::Transcript::load(path);
      if (prior->complete()) {
        std::cout << "transcript " << case_id << " is already complete\n";
        return;
      }
    }
    courtroom::Courtroom court(env.gw("lawyer_plaintiff"), env.gw("lawyer_defendant"), *kit.retriever,
                               court_options(env.config(), prior ? prior->rounds : rounds));
    evolution::EvolutionOptions eo;
    eo.refine_iterations = refine >= 0 ? refine : env.config().refine_iterations;
    evolution::Evolver evolver(env.gw("evaluator"), eo);
    try {
      const auto t = court.run_full_trial(c, &evolver, std::move(prior), [&](const courtroom::Transcript& t) { t.save(path); });
      std::cout << "wrote " << path.string() << " (" << t.turns.size() << " turns)\n";
    } catch (const Error& e) {
      std::cerr << "trial interrupted; partial transcript at " << path.string() << "\n";
      throw;
    }
  };
  trial_run->callback([&] { do_trial(false); });
  trial_resume->callback([&] { do_trial(true); });

  // evolve ---------------------------------------------------------------
  auto* evolve_cmd = app.add_subcommand("evolve", "Self-refinement artifacts");
  evolve_cmd->require_subcommand(1);
  auto* export_dpo = evolve_cmd->add_subcommand("export-dpo", "Preference pairs from scored transcripts");
  export_dpo->add_option("--trials", trials_dir, "Transcript directory")->required()->check(CLI::ExistingDirectory);
  export_dpo->add_option("--out", out_path, "Pairs JSONL (stdout when omitted)");
  export_dpo->callback([&] {
    const auto out = evolution::export_dpo_dir(trials_dir);
    std::vector<json> rows;
    for (const auto& p : out.pairs) rows.push_back(p.to_json());
    write_jsonl(out_path, rows);
    std::cerr << "pairs " << out.pairs.size() << ", zero-spread turns " << out.zero_spread_turns
              << ", unscored turns " << out.unscored_turns << "\n";
  });

  // retrieve -------------------------------------------------------------
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Query the retrieval system");
  retrieve_cmd->require_subcommand(1);
  std::string facts;
  std::size_t k = 10;
  auto* retrieve_precedent = retrieve_cmd->add_subcommand("precedent", "Most similar judged case");
  retrieve_precedent->add_option("--case-store", case_store, "Case store directory")->required();
  retrieve_precedent->add_option("--facts", facts, "Case facts")->required();
  retrieve_precedent->callback([&] {
    Env env(config_path, log_path);
    auto cases = corpus::CaseStore::open(case_store);
    const auto index = retrieval::CaseIndex::build(cases);
    retrieval::PrecedentOptions po;
    po.bm25_k = static_cast<std::size_t>(env.config().retrieval.case_bm25_k);
    po.rerank_m = static_cast<std::size_t>(env.config().retrieval.precedent_rerank_m);
    const auto hit = retrieval::retrieve_precedent(facts, index, env.gw("embedding"), po);
    std::cout << (hit ? hit->to_json().dump(2) : "null") << "\n";
  });
  auto* retrieve_articles = retrieve_cmd->add_subcommand("articles", "Dense article search");
  retrieve_articles->add_option("--articles", articles_dir, "Article store directory")->required();
  retrieve_articles->add_option("--facts", facts, "Case facts")->required();
  retrieve_articles->add_option("--k", k, "Articles to return")->check(CLI::PositiveNumber);
  retrieve_articles->add_option("--cache", cache_dir, "Article vector cache directory");
  retrieve_articles->callback([&] {
    Env env(config_path, log_path);
    auto articles = corpus::ArticleStore::open(articles_dir);
    std::optional<fs::path> cache;
    if (!cache_dir.empty()) cache = cache_dir;
    const auto store = retrieval::ArticleVectorStore::build(articles, env.gw("embedding"), cache);
    for (const auto& h : retrieval::retrieve_articles(facts, store, env.gw("embedding"), k))
      std::cout << h.rank << "\t" << h.doc_id << "\t" << h.score << "\n";
  });

  // retriever ------------------------------------------------------------
  auto* retriever_cmd = app.add_subcommand("retriever", "Article retriever training data and evaluation");
  retriever_cmd->require_subcommand(1);
  std::size_t neg_k = 0;
  auto* build_train = retriever_cmd->add_subcommand("build-train-data", "Positives and BM25 hard negatives per case");
  build_train->add_option("--articles", articles_dir, "Article store directory")->required();
  build_train->add_option("--cases", cases_file, "Cases JSONL")->required()->check(CLI::ExistingFile);
  build_train->add_option("--neg-k", neg_k, "BM25 depth for negatives (config default 50)");
  build_train->add_option("--out", out_path, "Training JSONL (stdout when omitted)");
  build_train->callback([&] {
    Env env(config_path, "");
    auto articles = corpus::ArticleStore::open(articles_dir);
    std::vector<retrieval::Document> docs;
    for (const auto& a : articles.all()) docs.push_back({a.article_id, retrieval::article_embedding_text(a)});
    const auto index = retrieval::Bm25Index::build(std::move(docs));
    const auto depth = neg_k ? neg_k : static_cast<std::size_t>(env.config().retrieval.train_neg_k);
    std::vector<json> rows;
    for (const auto& ex : retrieval::build_training_data(load_cases(cases_file), index, depth))
      rows.push_back(ex.to_json());
    write_jsonl(out_path, rows);
  });
  std::string results_file, gold_file, ks_list = "100,200,500,1000";
  auto* retriever_eval = retriever_cmd->add_subcommand("eval", "Recall@K of ranked results against gold articles");
  retriever_eval->add_option("--results", results_file, "JSON object: query id -> ranked article ids")
      ->required()
      ->check(CLI::ExistingFile);
  retriever_eval->add_option("--gold", gold_file, "Cases JSONL whose gold_articles are the targets")
      ->required()
      ->check(CLI::ExistingFile);
  retriever_eval->add_option("--ks", ks_list, "Comma-separated cutoffs");
  retriever_eval->callback([&] {
    const auto doc = json::parse(jsonl::read_text(results_file));
    std::map<std::string, std::vector<std::string>> results;
    for (auto it = doc.begin(); it != doc.end(); ++it) results[it.key()] = it.value().get<std::vector<std::string>>();
    std::map<std::string, std::set<std::string>> gold;
    for (const auto& c : load_cases(gold_file)) gold[c.case_id] = {c.gold_articles.begin(), c.gold_articles.end()};
    std::cout << retrieval::recall_at_k(results, gold, parse_ks(ks_list)).to_json().dump(2) << "\n";
  });

  // judge ----------------------------------------------------------------
  auto* judge_cmd = app.add_subcommand("judge", "Render the judgment for one case");
  bool no_argument = false, no_retrieval = false;
  std::string judgments_dir;
  judge_cmd->add_option("--case", case_id, "Case id")->required();
  judge_cmd->add_option("--cases", cases_file, "Cases JSONL")->required()->check(CLI::ExistingFile);
  judge_cmd->add_option("--articles", articles_dir, "Article store directory")->required();
  judge_cmd->add_option("--trials", trials_dir, "Transcript directory");
  judge_cmd->add_option("--case-store", case_store, "Case store for precedents");
  judge_cmd->add_option("--cache", cache_dir, "Article vector cache directory");
  judge_cmd->add_option("--out", judgments_dir, "Judgment directory")->required();
  judge_cmd->add_flag("--no-argument", no_argument, "Judge without the court debate");
  judge_cmd->add_flag("--no-retrieval", no_retrieval, "Judge without retrieved articles and precedent");
  judge_cmd->callback([&] {
    Env env(config_path, log_path);
    auto articles = corpus::ArticleStore::open(articles_dir);
    const auto c = find_case(cases_file, case_id);
    std::optional<courtroom::Transcript> transcript;
    if (!no_argument) {
      if (trials_dir.empty()) throw PreconditionError("--trials is required unless --no-argument is given");
      transcript = courtroom::Transcript::load(fs::path(trials_dir) / (case_id + ".json"));
    }
    std::optional<RetrievalKit> kit;
    if (!no_retrieval) kit.emplace(articles, case_store, cache_dir, env);
    adjudicator::JudgeOptions jo;
    jo.candidate_articles = static_cast<std::size_t>(env.config().judge_candidate_articles);
    const auto ctx = adjudicator::assemble_context(c, transcript ? &*transcript : nullptr,
                                                   kit ? kit->retriever.get() : nullptr, jo);
    const auto out = adjudicator::render_judgment(ctx, env.gw("judge", &articles), articles, jo);
    fs::create_directories(judgments_dir);
    const auto path = fs::path(judgments_dir) / (case_id + ".json");
    out.judgment.save(path);
    if (out.dropped_articles)
      std::cerr << "warning: dropped " << out.dropped_articles << " article id(s) outside the corpus\n";
    std::cout << "wrote " << path.string() << "\n";
  });

  // eval -----------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Judgment metrics");
  eval_cmd->require_subcommand(1);
  std::string refs_file, report_dir;
  bool free_text = false;
  auto* eval_report = eval_cmd->add_subcommand("report", "Article P/R/F1, criminal and civil accuracy");
  eval_report->add_option("--judgments", judgments_dir, "Judgment directory")->required()->check(CLI::ExistingDirectory);
  eval_report->add_option("--refs", refs_file, "Reference cases JSONL")->required()->check(CLI::ExistingFile);
  eval_report->add_option("--out", report_dir, "Write report.json and report.txt here");
  eval_report->add_flag("--free-text", free_text,
                        "Judgments are <case_id>.txt free text (external systems); needs --articles");
  eval_report->add_option("--articles", articles_dir, "Article store for resolving citations in free text");
  eval_report->callback([&] {
    Env env(config_path, log_path);
    const auto refs = load_cases(refs_file);
    std::vector<metrics::Prediction> predictions;
    if (free_text) {
      if (articles_dir.empty()) throw PreconditionError("--free-text needs --articles");
      auto articles = corpus::ArticleStore::open(articles_dir);
      std::map<std::string, CaseCategory> category;
      for (const auto& r : refs) category[r.case_id] = r.category;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(judgments_dir))
        if (e.path().extension() == ".txt") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        const auto id = f.stem().string();
        const auto cat = category.count(id) ? category[id] : CaseCategory::civil;
        predictions.push_back(metrics::prediction_from_text(id, jsonl::read_text(f), cat, articles));
      }
    } else {
      for (const auto& j : adjudicator::load_judgments(judgments_dir))
        predictions.push_back(metrics::prediction_from_judgment(j));
    }
    metrics::ReportOptions ro;
    ro.tolerance = env.config().tolerance;
    const auto report = metrics::build_report(predictions, refs, &env.gw("metrics"), ro);
    if (!report_dir.empty()) {
      fs::create_directories(report_dir);
      jsonl::write_text_atomic(fs::path(report_dir) / "report.json", report.to_json().dump(2) + "\n");
      jsonl::write_text_atomic(fs::path(report_dir) / "report.txt", report.to_text());
    }
    std::cout << report.to_text();
  });

  // run / config ----------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "Full pipeline: forge, trial, evolve, judge, eval");
  std::string run_config, stop_after;
  run_cmd->add_option("--config", run_config, "Run config (TOML)")->required();
  run_cmd->add_option("--stop-after", stop_after, "Stop after this stage")
      ->check(CLI::IsMember(pipeline::kStages));
  run_cmd->callback([&] {
    const auto cfg = pipeline::validate_config(run_config);
    pipeline::RunOptions ro;
    if (!stop_after.empty()) ro.stop_after = stop_after;
    const auto manifest = pipeline::run_pipeline(cfg, ro);
    for (const auto& s : manifest.stages) {
      std::cout << s.name << "\t" << pipeline::to_string(s.status);
      if (!s.error.empty()) std::cout << "\t" << s.error;
      std::cout << "\n";
    }
    std::cout << "run directory: " << pipeline::run_directory(cfg).string() << "\n";
    if (manifest.failed()) exit_code = kExitFailed;
  });

  auto* config_cmd = app.add_subcommand("config", "Run configuration helpers");
  config_cmd->require_subcommand(1);
  config_cmd->add_subcommand("defaults", "Print the default config")->callback([&] {
    std::cout << pipeline::default_config_toml();
  });
  std::string check_path;
  auto* config_check = config_cmd->add_subcommand("check", "Validate a config and print it with its digest");
  config_check->add_option("file", check_path, "Config file")->required();
  config_check->callback([&] {
    const auto cfg = pipeline::validate_config(check_path);
    std::cout << cfg.to_json().dump(2) << "\ndigest " << cfg.digest() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const MalformedInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConflictError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return exit_code;
}
