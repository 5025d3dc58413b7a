#include "lexcourt/casegen/legal_case.hpp"

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt {

std::string to_string(CaseCategory c) {
  switch (c) {
    case CaseCategory::criminal: return "criminal";
    case CaseCategory::civil: return "civil";
    case CaseCategory::administrative: return "administrative";
  }
  return "civil";
}

CaseCategory case_category_from_string(const std::string& s) {
  if (s == "criminal") return CaseCategory::criminal;
  if (s == "civil") return CaseCategory::civil;
  if (s == "administrative") return CaseCategory::administrative;
  throw PreconditionError("unknown case category '" + s + "'");
}

void LegalCase::validate() const {
  if (case_id.empty()) throw PreconditionError("case has no id");
  const auto blank = [](const std::string& s) { return utf8::trim(s).empty(); };
  if (blank(facts) || blank(indictment) || blank(plea))
    throw PreconditionError("case " + case_id + ": facts, indictment and plea must all be non-empty");
  if (gold_articles.empty()) throw PreconditionError("case " + case_id + ": gold_articles is empty");
  if (origin == CaseOrigin::generated && gold_judgment)
    throw PreconditionError("case " + case_id + ": generated cases carry no gold judgment");
}

nlohmann::json LegalCase::to_json() const {
  nlohmann::json j = {{"case_id", case_id},
                      {"facts", facts},
                      {"indictment", indictment},
                      {"plea", plea},
                      {"gold_articles", gold_articles},
                      {"category", to_string(category)},
                      {"origin", origin == CaseOrigin::generated ? "generated" : "ingested"}};
  if (gold_judgment) j["gold_judgment"] = *gold_judgment;
  return j;
}

LegalCase LegalCase::from_json(const nlohmann::json& j, std::size_t line) {
  LegalCase c;
  try {
    c.case_id = j.at("case_id").get<std::string>();
    c.facts = j.at("facts").get<std::string>();
    c.indictment = j.at("indictment").get<std::string>();
    c.plea = j.at("plea").get<std::string>();
    c.gold_articles = j.at("gold_articles").get<std::vector<std::string>>();
    c.category = case_category_from_string(j.at("category").get<std::string>());
    const auto origin = j.value("origin", std::string("ingested"));
    if (origin != "generated" && origin != "ingested") throw PreconditionError("unknown origin '" + origin + "'");
    c.origin = origin == "generated" ? CaseOrigin::generated : CaseOrigin::ingested;
    if (j.contains("gold_judgment") && !j["gold_judgment"].is_null())
      c.gold_judgment = j["gold_judgment"].get<std::string>();
    c.validate();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError("line " + std::to_string(line) + ": " + e.what(), line);
  } catch (const PreconditionError& e) {
    throw MalformedInputError("line " + std::to_string(line) + ": " + e.what(), line);
  }
  return c;
}

std::vector<LegalCase> load_cases(const std::string& path) {
  std::vector<LegalCase> out;
  for (const auto& line : jsonl::read(path)) out.push_back(LegalCase::from_json(line.value, line.number));
  return out;
}

}  // namespace lexcourt
