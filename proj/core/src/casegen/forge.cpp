#include "lexcourt/casegen/forge.hpp"

#include <cstdio>

#include "lexcourt/util/rng.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::casegen {

using gateway::Message;
using gateway::ResponseFormat;
using gateway::Role;
using nlohmann::json;

namespace {

std::string join_ids(const std::vector<corpus::LawArticle>& articles) {
  std::string out;
  for (const auto& a : articles) {
    if (!out.empty()) out += ",";
    out += a.article_id;
  }
  return out;
}

std::string render_articles(const std::vector<corpus::LawArticle>& articles) {
  std::string out;
  for (const auto& a : articles) {
    out += "[" + a.article_id + "] 《" + a.statute_name + "》第" + std::to_string(a.article_number) + "条: ";
    out += a.body;
    out += "\n";
  }
  return out;
}

std::string padded(const std::string& prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", n);
  return prefix + "-" + buf;
}

bool require_bool(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_boolean()) throw ParseFailure(std::string("verdict field '") + key + "' missing or not boolean");
  return it->get<bool>();
}

}  // namespace

json QualityVerdict::to_json() const {
  return {{"correctness", correctness},
          {"reality", reality},
          {"rationality", rationality},
          {"complexity_pass", complexity_pass},
          {"rationale", rationale}};
}

QualityVerdict QualityVerdict::from_json(const json& j) {
  QualityVerdict v;
  v.correctness = require_bool(j, "correctness");
  v.reality = require_bool(j, "reality");
  v.rationality = require_bool(j, "rationality");
  v.complexity_pass = require_bool(j, "complexity_pass");
  auto it = j.find("rationale");
  if (it == j.end() || !it->is_string()) throw ParseFailure("verdict field 'rationale' missing or not a string");
  v.rationale = it->get<std::string>();
  return v;
}

json RejectionRecord::to_json() const {
  return {{"case_attempt_id", case_attempt_id}, {"verdict", verdict.to_json()}, {"rationale", rationale}};
}

json ForgeStats::to_json() const {
  return {{"attempts", attempts},
          {"accepted", accepted},
          {"rejected", rejected},
          {"format_failures", format_failures},
          {"exhausted_slots", exhausted_slots},
          {"acceptance_rate", acceptance_rate()}};
}

CaseCategory infer_category(const std::vector<corpus::LawArticle>& articles) {
  bool administrative = false;
  for (const auto& a : articles) {
    if (a.category == corpus::ArticleCategory::criminal) return CaseCategory::criminal;
    if (a.statute_name.find("行政") != std::string::npos) administrative = true;
  }
  return administrative ? CaseCategory::administrative : CaseCategory::civil;
}

gateway::ChatRequest generation_request(const gateway::Gateway& gw, const std::vector<corpus::LawArticle>& articles,
                                        CaseCategory category) {
  std::string user =
      "Legal articles serving as the legal foundation of the case:\n" + render_articles(articles) +
      "\nWrite a realistic, complex and debatable " + to_string(category) +
      " case that these articles govern. Do not state the court's final judgment.\n"
      "Return a JSON object with exactly these string fields:\n"
      "  \"facts\": the case facts,\n"
      "  \"indictment\": the plaintiff's (or prosecution's) indictment with claims and reasons,\n"
      "  \"plea\": the defendant's pleadings in response.";
  auto req = gw.request({{Role::system, "You are an experienced Chinese legal practitioner who drafts case materials."},
                         {Role::user, std::move(user)}},
                        kTaskGenerate, ResponseFormat::structured_object);
  req.attributes["category"] = to_string(category);
  req.attributes["article_ids"] = join_ids(articles);
  return req;
}

LegalCase generate_case(const std::vector<corpus::LawArticle>& articles, gateway::Gateway& gw,
                        const std::string& case_id) {
  if (articles.size() < 2 || articles.size() > 5)
    throw PreconditionError("generate_case needs 2 to 5 articles, got " + std::to_string(articles.size()));
  const auto category = infer_category(articles);
  const auto req = generation_request(gw, articles, category);

  struct Sections {
    std::string facts, indictment, plea;
  };
  const std::function<Sections(const std::string&)> parse = [](const std::string& text) {
    const auto obj = gateway::extract_object(text);
    Sections s;
    for (auto [key, out] : {std::pair{"facts", &s.facts}, std::pair{"indictment", &s.indictment},
                            std::pair{"plea", &s.plea}}) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string() || utf8::trim(it->get<std::string>()).empty())
        throw ParseFailure(std::string("generated case lacks section '") + key + "'");
      *out = utf8::trim(it->get<std::string>());
    }
    return s;
  };
  auto sections = gw.chat_structured(req, "generation", parse);

  LegalCase c;
  c.case_id = case_id;
  c.facts = std::move(sections.facts);
  c.indictment = std::move(sections.indictment);
  c.plea = std::move(sections.plea);
  for (const auto& a : articles) c.gold_articles.push_back(a.article_id);
  c.category = category;
  c.origin = CaseOrigin::generated;
  return c;
}

gateway::ChatRequest vetting_request(const gateway::Gateway& gw, const LegalCase& c,
                                     const std::vector<corpus::LawArticle>& articles) {
  std::string user =
      "Legal articles the case was built on:\n" + render_articles(articles) + "\nCase facts:\n" + c.facts +
      "\n\nIndictment:\n" + c.indictment + "\n\nPlea:\n" + c.plea +
      "\n\nJudge the case on four checks and answer with a JSON object:\n"
      "  \"correctness\": true if the case can happen in the real world;\n"
      "  \"reality\": true if there are relevant laws as a basis;\n"
      "  \"rationality\": true if the plaintiff's and defendant's claims are within a reasonable legal framework;\n"
      "  \"complexity_pass\": false if the case is overly simple, anomalous or not genuinely debatable;\n"
      "  \"rationale\": a short explanation of your decision.";
  auto req = gw.request({{Role::system, "You review synthetic legal cases for quality before they are used."},
                         {Role::user, std::move(user)}},
                        kTaskVet, ResponseFormat::structured_object);
  req.temperature = 0.0;
  req.attributes["case_id"] = c.case_id;
  return req;
}

QualityVerdict vet_case(const LegalCase& c, const std::vector<corpus::LawArticle>& articles, gateway::Gateway& gw) {
  const std::function<QualityVerdict(const std::string&)> parse = [](const std::string& text) {
    return QualityVerdict::from_json(gateway::extract_object(text));
  };
  return gw.chat_structured(vetting_request(gw, c, articles), "evaluation", parse);
}

ForgeResult forge_batch(const corpus::ArticleStore& articles, gateway::Gateway& generator, gateway::Gateway& vetter,
                        const ForgeOptions& options) {
  if (options.n_target == 0) throw PreconditionError("n_target must be positive");
  if (options.max_attempts_per_case == 0) throw PreconditionError("max_attempts_per_case must be positive");
  if (options.min_articles < 2 || options.max_articles > 5 || options.min_articles > options.max_articles)
    throw PreconditionError("articles per case must lie within 2..5");

  std::vector<corpus::ArticleCategory> categories;
  for (auto cat : {corpus::ArticleCategory::criminal, corpus::ArticleCategory::civil_admin})
    if (articles.count(cat) >= options.min_articles) categories.push_back(cat);
  if (categories.empty())
    throw InsufficientCorpusError("no article category holds at least " + std::to_string(options.min_articles) +
                                  " articles");

  DeterministicRng rng(options.seed);
  ForgeResult result;
  for (std::size_t slot = 0; slot < options.n_target; ++slot) {
    bool filled = false;
    for (std::size_t attempt = 0; attempt < options.max_attempts_per_case && !filled; ++attempt) {
      ++result.stats.attempts;
      const auto attempt_id = padded("attempt", result.stats.attempts);
      const auto category = categories[rng.below(categories.size())];
      const auto pool = articles.count(category);
      const auto hi = std::min(options.max_articles, pool);
      const auto k = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(options.min_articles),
                                                          static_cast<std::int64_t>(hi)));
      const auto sample = articles.sample(k, category, rng.below(~std::uint64_t{0}));

      const auto case_id = padded(options.id_prefix, result.accepted.size() + 1);
      QualityVerdict verdict;
      LegalCase candidate;
      try {
        candidate = generate_case(sample, generator, case_id);
        verdict = vet_case(candidate, sample, vetter);
      } catch (const FormatError& e) {
        ++result.stats.format_failures;
        ++result.stats.rejected;
        result.rejections.push_back({attempt_id, QualityVerdict{}, e.what()});
        continue;
      }
      if (verdict.accepted()) {
        result.accepted.push_back({std::move(candidate), verdict});
        ++result.stats.accepted;
        filled = true;
      } else {
        ++result.stats.rejected;
        result.rejections.push_back({attempt_id, verdict, verdict.rationale});
      }
    }
    if (!filled) ++result.stats.exhausted_slots;
  }
  if (result.accepted.empty())
    throw ForgeExhaustedError("no case accepted after " + std::to_string(result.stats.attempts) + " attempts",
                              result.stats);
  return result;
}

}  // namespace lexcourt::casegen
