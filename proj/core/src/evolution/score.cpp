#include "lexcourt/evolution/score.hpp"

#include <cmath>


namespace lexcourt::evolution {

using gateway::ResponseFormat;
using gateway::Role;
using nlohmann::json;

const char* const kRubric =
    "s1: Did the content of the debate cite legal provisions and cases, and is the relevance of legal articles "
    "and cases to this case significant? Can you provide effective assistance to the judge's judgment, etc. "
    "with a score of 0-5 points;\n"
    "s2: Does it include the explanation of our viewpoint and the rebuttal of the other party's viewpoint. "
    "Is our viewpoint reasonable? Is the rebuttal reasonable and well founded? Is there a correct "
    "judgment on the current situation of the case? Whether it is conducive to providing judges with a "
    "comprehensive and effective perspective, etc., score 0-5 points;\n"
    "s3: After a round of debate, can we give the outside world a comprehensive understanding of the case? "
    "Can summarize the plot of the case, give the judge room to make judgments, etc., score 0-5 points\n"
    "Evaluation criteria:\n"
    "s1: Did the content of the debate cite legal articles and cases, and is the relevance of legal articles "
    "and cases to this case significant? Can you provide effective assistance to the judge's judgment.\n"
    "0.5-1 points: Refers to some relevant laws and cases, which can provide reference for the judge's "
    "judgment to a certain extent, but not comprehensive enough.\n"
    "1-1.5 points: Some relevant laws and cases were cited, but it was not comprehensive or in-depth enough.\n"
    "1.5-2.5 points: In addition to citing some legal articles and cases, the interpretation of applicability "
    "is also relatively in-depth, which is more helpful for judges to make judgments.\n"
    "2.5-4 points: Many relevant laws and cases have been cited, which has a high relevance to this case "
    "and a clear interpretation, providing effective assistance for the judge's judgment.\n"
    "4-5 points: Accurately cited a large number of highly relevant laws and cases, providing comprehensive, "
    "in-depth, and highly valuable references for judges' judgments.\n"
    "s2: Does it include the explanation of our viewpoint and the rebuttal of the other party's viewpoint? "
    "The viewpoint needs to be reasonable, and the rebuttal needs to be well founded in order to provide the "
    "judge with an effective perspective.\n"
    "0-0.5 points: Explained our viewpoint and provided some rebuttal to the other party's viewpoint, but "
    "there are deficiencies in the strength, rationality, and basis of the viewpoint and rebuttal.\n"
    "0.5-1.5: We have clearly stated our viewpoint and have a certain degree of counterattack against "
    "the other party, but the strength of the judge's decisive judgment is not strong enough.\n"
    "1.5-3 points: Clearly and reasonably presented our viewpoint, and strongly refuted the other party's "
    "viewpoint with sufficient evidence.\n"
    "3-4.5 points: The explanation of our viewpoint has basically gained accurate and strong persuasiveness, "
    "comprehensively elaborated our viewpoint, and provided most complete and reliable rebuttals to the "
    "other party's viewpoint.\n"
    "4.5-5 points: Accurately, deeply, and persuasively presented our viewpoint, and provided a comprehensive, "
    "powerful, and well founded rebuttal to the other party's viewpoint.\n"
    "s3: After a round of debate, can we give the outside world a comprehensive understanding of the case? "
    "Being able to summarize the plot of the case and provide the judge with room for judgment.\n"
    "0-0.5 points: Described some of the case plot, but there are some key information omissions that "
    "have certain limitations on the judge's judgment.\n"
    "0.5-1.5 points: A comprehensive description of the case's plot can provide the outside world with a clear "
    "understanding of the case and provide sufficient judgment space for the judge.\n"
    "1.5-2.5 points: It basically covers the details of the case, and the outside world has a basic understanding "
    "of the case. The judge can basically judge the outcome of the case.\n"
    "2.5-3.5: Relatively complete, accurate, and comprehensive description of the case plot, providing "
    "the outside world with a thorough understanding of the case and offering direction for the judge's "
    "judgment.\n"
    "3.5-5 points: A complete, accurate, and comprehensive description of the case plot provides the outside "
    "world with a very thorough understanding of the case, providing judges with broad and sufficient "
    "judgment space.";

ArgumentScore ArgumentScore::make(int s1, int s2, int s3, std::string feedback) {
  for (int s : {s1, s2, s3})
    if (s < 0 || s > 5) throw PreconditionError("sub-score " + std::to_string(s) + " outside [0,5]");
  return ArgumentScore{s1, s2, s3, s1 + s2 + s3, std::move(feedback)};
}

json ArgumentScore::to_json() const {
  return {{"s1", s1_citation}, {"s2", s2_refutation}, {"s3", s3_comprehension}, {"total", total},
          {"feedback", feedback}};
}

ArgumentScore ArgumentScore::from_json(const json& j) {
  auto s = make(j.at("s1").get<int>(), j.at("s2").get<int>(), j.at("s3").get<int>(), j.value("feedback", ""));
  if (j.contains("total") && j["total"].get<int>() != s.total)
    throw PreconditionError("stored total does not equal s1+s2+s3");
  return s;
}

json ArgumentVariant::to_json() const {
  json j = {{"text", text}, {"score", score ? score->to_json() : json()}};
  if (!cited_articles.empty()) j["cited_articles"] = cited_articles;
  if (!cited_precedents.empty()) j["cited_precedents"] = cited_precedents;
  return j;
}

ArgumentVariant ArgumentVariant::from_json(const json& j) {
  ArgumentVariant v;
  v.text = j.at("text").get<std::string>();
  if (j.contains("score") && !j["score"].is_null()) v.score = ArgumentScore::from_json(j["score"]);
  v.cited_articles = j.value("cited_articles", std::vector<std::string>{});
  v.cited_precedents = j.value("cited_precedents", std::vector<std::string>{});
  return v;
}

gateway::ChatRequest scoring_request(const gateway::Gateway& evaluator, const std::string& turn_text,
                                     const ScoringContext& ctx) {
  std::string user = "Case materials:\n" + ctx.case_summary + "\n\n";
  if (!ctx.opponent_text.empty()) user += "Opposing counsel's preceding argument:\n" + ctx.opponent_text + "\n\n";
  user += "Argument by the " + ctx.party + "'s lawyer to evaluate:\n" + turn_text +
          "\n\nScore the argument with the criteria below. Each of s1, s2, s3 is an integer from 0 to 5.\n" + kRubric +
          "\n\nAnswer with a JSON object {\"s1\": int, \"s2\": int, \"s3\": int, \"feedback\": string} where "
          "feedback gives concrete advice for improving the argument.";
  auto req = evaluator.request({{Role::system, "You are the presiding judge evaluating a lawyer's courtroom argument."},
                                {Role::user, std::move(user)}},
                               kTaskScore, ResponseFormat::structured_object);
  req.temperature = 0.0;
  req.attributes["party"] = ctx.party;
  req.attributes["case_id"] = ctx.case_id;
  return req;
}

namespace {

int sub_score(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseFailure(std::string("score reply lacks '") + key + "'");
  double v = 0;
  if (it->is_number_integer()) v = static_cast<double>(it->get<long long>());
  else if (it->is_number_float()) v = it->get<double>();
  else throw ParseFailure(std::string("score '") + key + "' is not a number");
  if (v != std::floor(v)) throw ParseFailure(std::string("score '") + key + "' is not an integer");
  if (v < 0 || v > 5) throw ParseFailure(std::string("score '") + key + "' is outside 0-5");
  return static_cast<int>(v);
}

}  // namespace

ArgumentScore parse_score(const std::string& reply) {
  const auto obj = gateway::extract_object(reply);
  std::string feedback;
  if (auto it = obj.find("feedback"); it != obj.end()) {
    if (!it->is_string()) throw ParseFailure("feedback must be a string");
    feedback = it->get<std::string>();
  }
  return ArgumentScore::make(sub_score(obj, "s1"), sub_score(obj, "s2"), sub_score(obj, "s3"), std::move(feedback));
}

ArgumentScore score_turn(const std::string& turn_text, const ScoringContext& ctx, gateway::Gateway& evaluator) {
  if (turn_text.empty()) throw PreconditionError("cannot score an empty turn");
  const std::function<ArgumentScore(const std::string&)> parse = parse_score;
  return evaluator.chat_structured(scoring_request(evaluator, turn_text, ctx), "scoring", parse);
}

}  // namespace lexcourt::evolution
