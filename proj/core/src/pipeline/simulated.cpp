#include "lexcourt/pipeline/simulated.hpp"

#include <regex>
#include <sstream>

#include "lexcourt/adjudicator/judge.hpp"
#include "lexcourt/casegen/forge.hpp"
#include "lexcourt/courtroom/courtroom.hpp"
#include "lexcourt/courtroom/transcript.hpp"
#include "lexcourt/evolution/score.hpp"
#include "lexcourt/metrics/civil.hpp"
#include "lexcourt/util/digest.hpp"
#include "lexcourt/util/rng.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::pipeline {

using gateway::ChatRequest;
using gateway::Role;
using nlohmann::json;

namespace {

std::vector<std::string> split_ids(const std::string& joined) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(joined);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string attr(const ChatRequest& req, const std::string& key) {
  auto it = req.attributes.find(key);
  return it == req.attributes.end() ? std::string() : it->second;
}

std::string last_user(const ChatRequest& req) {
  for (auto it = req.messages.rbegin(); it != req.messages.rend(); ++it)
    if (it->role == Role::user) return it->text;
  return {};
}

std::string hex_tag(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 6; ++i, v >>= 4) out += digits[v & 0xf];
  return out;
}

std::string generate_case(const ChatRequest& req, DeterministicRng& rng) {
  // Article bodies from the prompt keep the facts lexically tied to them.
  static const std::regex line_re(R"(^\[([^\]]+)\] (.*)$)");
  std::string bodies;
  std::istringstream in(last_user(req));
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_match(line, m, line_re)) bodies += m[2].str() + " ";
  }
  const auto category = attr(req, "category");
  const auto tag = hex_tag(rng.below(1u << 24));
  return json{{"facts", "Simulated " + category + " dispute " + tag + ". The conduct at issue concerns: " + bodies},
              {"indictment", "The plaintiff asks the court to apply articles " + attr(req, "article_ids") +
                                 " and to grant relief in dispute " + tag + "."},
              {"plea", "The defendant denies liability in dispute " + tag +
                           " and contests the application of the cited articles."}}
      .dump();
}

std::string vet_case(DeterministicRng& rng) {
  const bool complex_enough = rng.below(5) != 0;
  return json{{"correctness", true},
              {"reality", true},
              {"rationality", true},
              {"complexity_pass", complex_enough},
              {"rationale", complex_enough ? "The case is realistic and debatable." : "The case is too simple."}}
      .dump();
}

std::string argue(const ChatRequest& req, DeterministicRng& rng) {
  const auto party = attr(req, "party");
  const auto round = attr(req, "round");
  std::size_t revision = 0;
  for (const auto& m : req.messages) revision += m.role == Role::assistant;
  std::vector<std::string> articles;
  for (const auto& id : split_ids(attr(req, "context_articles")))
    if (articles.size() < 2 && rng.below(3) != 0) articles.push_back(id);
  std::vector<std::string> precedents;
  if (const auto p = attr(req, "context_precedent"); !p.empty()) precedents.push_back(p);

  std::string body = "Counsel for the " + party + " (round " + round + ", draft " + std::to_string(revision) + ", " +
                     hex_tag(rng.below(1u << 24)) + "): ";
  body += party == "plaintiff" ? "the facts establish the defendant's liability under the cited provisions."
                               : "the plaintiff's claims lack factual and legal support.";
  if (revision > 0) body += " The argument now answers the evaluator's feedback point by point.";
  return courtroom::render_with_trailer(body, articles, precedents);
}

std::string score(DeterministicRng& rng) {
  const int s1 = static_cast<int>(rng.below(6));
  const int s2 = static_cast<int>(rng.below(6));
  const int s3 = static_cast<int>(rng.below(6));
  return json{{"s1", s1}, {"s2", s2}, {"s3", s3},
              {"feedback", "Cite the governing articles more precisely and answer the opponent directly."}}
      .dump();
}

std::string judge(const ChatRequest& req, DeterministicRng& rng, const std::vector<std::string>& fallback) {
  std::vector<std::string> articles;
  const auto add = [&](const std::string& id) {
    if (articles.size() < 3 && std::find(articles.begin(), articles.end(), id) == articles.end())
      articles.push_back(id);
  };
  for (const auto& id : split_ids(attr(req, "cited_articles"))) add(id);
  for (const auto& id : split_ids(attr(req, "candidate_articles"))) add(id);
  if (articles.empty())
    for (std::size_t i = 0; i < fallback.size() && i < 2; ++i) add(fallback[i]);

  json reply = {{"articles", articles}};
  if (attr(req, "category") == "criminal") {
    static const char* charges[] = {"盗窃罪", "诈骗罪", "故意伤害罪", "危险驾驶罪"};
    reply["criminal_outcome"] = {{"charge", charges[rng.below(4)]},
                                 {"prison_term_months", 6 * static_cast<int>(1 + rng.below(10))},
                                 {"fine_amount", 1000 * static_cast<int>(rng.below(11))}};
  } else {
    reply["civil_results"] = {"The defendant shall perform the contested obligation.",
                              "The plaintiff's other claims are dismissed."};
  }
  reply["analysis"] = "The court weighed both parties' arguments against the governing articles.";
  return reply.dump();
}

std::string summarize(const ChatRequest& req) {
  // Clause split on Chinese and ASCII separators; enumerators and cost
  // clauses dropped.
  static const std::wregex sep(L"[；;。\n]");
  static const std::wregex lead(L"^\\s*(判决如下[:：]|[一二三四五六七八九十]+、|\\d+[.、])\\s*");
  const auto wide = utf8::to_wide(attr(req, "raw_text"));
  std::vector<std::string> results;
  for (std::wsregex_token_iterator it(wide.begin(), wide.end(), sep, -1), end; it != end; ++it) {
    auto clause = utf8::trim(utf8::from_wide(std::regex_replace(it->str(), lead, L"")));
    if (!clause.empty() && !metrics::is_cost_clause(clause)) results.push_back(clause);
  }
  if (results.empty()) results.push_back(utf8::trim(attr(req, "raw_text")));
  return metrics::render_result_list(results);
}

std::string match(const ChatRequest& req) {
  const auto reference = json::parse(attr(req, "reference"), nullptr, false);
  const auto candidate = json::parse(attr(req, "candidate"), nullptr, false);
  std::vector<std::string> cands;
  if (candidate.is_object())
    for (const auto& v : candidate) cands.push_back(v.get<std::string>());
  std::string out = "{";
  std::size_t i = 0;
  if (reference.is_object()) {
    for (std::size_t k = 1; k <= reference.size(); ++k) {
      const auto key = "Result " + std::to_string(k);
      const bool hit = std::find(cands.begin(), cands.end(), reference.value(key, "")) != cands.end();
      out += (i++ ? ", " : "") + ("\"" + key + "\": ") + (hit ? "1" : "0");
    }
  }
  return out + "}";
}

}  // namespace

gateway::Responder simulated_responder(std::vector<std::string> fallback_articles) {
  return [fallback = std::move(fallback_articles)](const ChatRequest& req) -> std::string {
    DeterministicRng rng(fnv1a64(gateway::render_prompt(req)));
    const auto& task = req.task;
    if (task == casegen::kTaskGenerate) return generate_case(req, rng);
    if (task == casegen::kTaskVet) return vet_case(rng);
    if (task == courtroom::kTaskArgue || task == evolution::kTaskRevise) return argue(req, rng);
    if (task == evolution::kTaskScore) return score(rng);
    if (task == adjudicator::kTaskJudge) return judge(req, rng, fallback);
    if (task == metrics::kTaskSummarize) return summarize(req);
    if (task == metrics::kTaskMatch) return match(req);
    return gateway::MockProvider::digest_reply(req);
  };
}

}  // namespace lexcourt::pipeline
