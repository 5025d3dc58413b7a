#include "lexcourt/adjudicator/judge.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lexcourt/util/utf8.hpp"

namespace lexcourt::adjudicator {

using gateway::ResponseFormat;
using gateway::Role;
using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ",";
    out += id;
  }
  return out;
}

std::string clip(const std::string& text, std::size_t cps) {
  auto decoded = utf8::decode(text);
  if (decoded.size() <= cps) return text;
  decoded.resize(cps);
  return utf8::encode(decoded);
}

const json* find_any(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (auto it = obj.find(k); it != obj.end() && !it->is_null()) return &*it;
  return nullptr;
}

double require_number(const json& obj, std::initializer_list<const char*> keys, const char* what) {
  const json* v = find_any(obj, keys);
  if (!v || !v->is_number()) throw ParseFailure(std::string("criminal outcome lacks a numeric ") + what);
  return v->get<double>();
}

const char* const kCriminalInstruction =
    "Decide the case. Answer with a JSON object:\n"
    "{\"articles\": [ids of the legal articles the judgment relies on],\n"
    " \"criminal_outcome\": {\"charge\": the charge, \"prison_term_months\": integer months (-1 for life "
    "imprisonment), \"fine_amount\": fine in yuan (0 if none)},\n"
    " \"analysis\": your analysis of the whole case}";

const char* const kCivilInstruction =
    "Decide the case. Answer with a JSON object:\n"
    "{\"articles\": [ids of the legal articles the judgment relies on],\n"
    " \"civil_results\": [each result of the judgment as one statement],\n"
    " \"analysis\": your analysis of the whole case}";

}  // namespace

std::string render_transcript(const courtroom::Transcript& t) {
  std::string out;
  for (const auto& turn : t.turns) {
    out += courtroom::turn_heading(turn) + "\n";
    out += courtroom::render_with_trailer(turn.text, turn.cited_articles, turn.cited_precedents) + "\n\n";
  }
  return out;
}

JudgeContext assemble_context(const LegalCase& c, const courtroom::Transcript* transcript,
                              retrieval::CaseRetriever* retriever, const JudgeOptions& options) {
  c.validate();
  JudgeContext ctx;
  ctx.legal_case = c;
  if (transcript) {
    if (transcript->case_id != c.case_id)
      throw PreconditionError("transcript " + transcript->case_id + " does not belong to case " + c.case_id);
    if (!transcript->complete()) throw PreconditionError("transcript " + c.case_id + " is not complete");
    ctx.transcript_text = render_transcript(*transcript);
    std::set<std::string> seen;
    for (const auto& turn : transcript->turns)
      for (const auto& id : turn.cited_articles)
        if (seen.insert(id).second) ctx.cited_articles.push_back(id);
  } else {
    ctx.no_argument = true;
  }
  if (retriever) {
    auto bundle = retriever->retrieve(c);
    if (bundle.articles.size() > options.candidate_articles) bundle.articles.resize(options.candidate_articles);
    ctx.candidate_articles = std::move(bundle.articles);
    ctx.precedent = std::move(bundle.precedent);
  } else {
    ctx.no_retrieval = true;
  }
  return ctx;
}

gateway::ChatRequest judgment_request(const gateway::Gateway& gw, const JudgeContext& ctx,
                                      const JudgeOptions& options) {
  const auto& c = ctx.legal_case;
  std::string user = "Case facts:\n" + c.facts + "\n\nIndictment:\n" + c.indictment + "\n\nPlea:\n" + c.plea + "\n\n";
  if (!ctx.no_argument) user += "Court debate:\n" + ctx.transcript_text;
  if (ctx.precedent) {
    const auto& p = *ctx.precedent;
    user += "Precedent [" + p.case_id + "] " + p.case_name + " (" + p.action_cause + "):\n" +
            clip(p.full_text, options.precedent_chars) + "\n\n";
  }
  if (!ctx.candidate_articles.empty()) {
    user += "Candidate legal articles:\n";
    for (const auto& a : ctx.candidate_articles) user += "[" + a.article_id + "] " + a.text + "\n";
    user += "\n";
  }
  user += "This is a " + to_string(c.category) + " case. ";
  user += c.is_criminal() ? kCriminalInstruction : kCivilInstruction;

  auto req = gw.request({{Role::system, "You are the presiding judge. Decide the case on the law and the facts."},
                         {Role::user, std::move(user)}},
                        kTaskJudge, ResponseFormat::structured_object);
  req.temperature = 0.0;
  req.attributes["case_id"] = c.case_id;
  req.attributes["category"] = to_string(c.category);
  std::vector<std::string> candidates;
  for (const auto& a : ctx.candidate_articles) candidates.push_back(a.article_id);
  req.attributes["candidate_articles"] = join(candidates);
  req.attributes["cited_articles"] = join(ctx.cited_articles);
  return req;
}

RenderedJudgment parse_judgment(const std::string& reply, const LegalCase& c, const corpus::ArticleStore& articles) {
  const auto obj = gateway::extract_object(reply);
  RenderedJudgment out;
  auto& j = out.judgment;
  j.case_id = c.case_id;

  const json* ids = find_any(obj, {"articles", "predicted_articles"});
  if (!ids || !ids->is_array()) throw ParseFailure("judgment lacks the articles section");
  std::set<std::string> seen;
  for (const auto& id : *ids) {
    if (!id.is_string()) throw ParseFailure("article ids must be strings");
    const auto s = id.get<std::string>();
    if (!articles.contains(s)) {
      ++out.dropped_articles;
      continue;
    }
    if (seen.insert(s).second) j.predicted_articles.push_back(s);
  }
  if (j.predicted_articles.empty()) throw ParseFailure("judgment names no article of the corpus");

  const json* criminal = find_any(obj, {"criminal_outcome"});
  const json* civil = find_any(obj, {"civil_results"});
  if (c.is_criminal()) {
    if (civil) throw ParseFailure("criminal case judged with civil results");
    if (!criminal || !criminal->is_object()) throw ParseFailure("judgment lacks the criminal outcome");
    CriminalOutcome o;
    const json* charge = find_any(*criminal, {"charge"});
    if (!charge || !charge->is_string() || utf8::trim(charge->get<std::string>()).empty())
      throw ParseFailure("criminal outcome lacks a charge");
    o.charge = utf8::trim(charge->get<std::string>());
    const double term = require_number(*criminal, {"prison_term_months", "term"}, "prison term");
    if (term != std::floor(term) || (term < 0 && term != kLifeImprisonment))
      throw ParseFailure("prison term must be whole months, or -1 for life");
    o.prison_term_months = static_cast<int>(term);
    o.fine_amount = require_number(*criminal, {"fine_amount", "fine"}, "fine");
    if (o.fine_amount < 0) throw ParseFailure("fine must not be negative");
    j.criminal_outcome = o;
  } else {
    if (criminal) throw ParseFailure(to_string(c.category) + " case judged with a criminal outcome");
    if (!civil || !civil->is_array() || civil->empty()) throw ParseFailure("judgment lacks civil results");
    std::vector<std::string> results;
    for (const auto& r : *civil) {
      if (!r.is_string() || utf8::trim(r.get<std::string>()).empty())
        throw ParseFailure("civil results must be non-empty strings");
      results.push_back(utf8::trim(r.get<std::string>()));
    }
    j.civil_results = std::move(results);
  }

  const json* analysis = find_any(obj, {"analysis"});
  if (!analysis || !analysis->is_string() || utf8::trim(analysis->get<std::string>()).empty())
    throw ParseFailure("judgment lacks the case analysis");
  j.analysis = analysis->get<std::string>();
  return out;
}

RenderedJudgment render_judgment(const JudgeContext& ctx, gateway::Gateway& gw, const corpus::ArticleStore& articles,
                                 const JudgeOptions& options) {
  const std::function<RenderedJudgment(const std::string&)> parse = [&](const std::string& reply) {
    return parse_judgment(reply, ctx.legal_case, articles);
  };
  auto out = gw.chat_structured(judgment_request(gw, ctx, options), "judgment", parse);
  out.judgment.validate_for(ctx.legal_case.category);
  return out;
}

}  // namespace lexcourt::adjudicator
