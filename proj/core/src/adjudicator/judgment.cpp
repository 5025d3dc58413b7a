#include "lexcourt/adjudicator/judgment.hpp"

#include <algorithm>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace lexcourt::adjudicator {

using nlohmann::json;

json CriminalOutcome::to_json() const {
  return {{"charge", charge}, {"prison_term_months", prison_term_months}, {"fine_amount", fine_amount}};
}

CriminalOutcome CriminalOutcome::from_json(const json& j) {
  CriminalOutcome o;
  o.charge = j.at("charge").get<std::string>();
  o.prison_term_months = j.at("prison_term_months").get<int>();
  o.fine_amount = j.at("fine_amount").get<double>();
  return o;
}

void Judgment::validate() const {
  if (case_id.empty()) throw PreconditionError("judgment without case_id");
  if (predicted_articles.empty()) throw PreconditionError("judgment " + case_id + " predicts no article");
  if (criminal_outcome.has_value() == civil_results.has_value())
    throw PreconditionError("judgment " + case_id + " must carry exactly one of criminal_outcome / civil_results");
  if (criminal_outcome) {
    if (criminal_outcome->charge.empty()) throw PreconditionError("judgment " + case_id + " has an empty charge");
    if (criminal_outcome->prison_term_months < 0 && criminal_outcome->prison_term_months != kLifeImprisonment)
      throw PreconditionError("judgment " + case_id + " has a negative prison term");
    if (criminal_outcome->fine_amount < 0) throw PreconditionError("judgment " + case_id + " has a negative fine");
  }
}

void Judgment::validate_for(CaseCategory category) const {
  validate();
  if ((category == CaseCategory::criminal) != criminal_outcome.has_value())
    throw PreconditionError("judgment " + case_id + " does not match its " + to_string(category) + " case");
}

json Judgment::to_json() const {
  json j = {{"case_id", case_id}, {"predicted_articles", predicted_articles}};
  if (criminal_outcome) j["criminal_outcome"] = criminal_outcome->to_json();
  if (civil_results) j["civil_results"] = *civil_results;
  j["analysis"] = analysis;
  return j;
}

Judgment Judgment::from_json(const json& j) {
  Judgment out;
  out.case_id = j.at("case_id").get<std::string>();
  out.predicted_articles = j.at("predicted_articles").get<std::vector<std::string>>();
  if (j.contains("criminal_outcome") && !j["criminal_outcome"].is_null())
    out.criminal_outcome = CriminalOutcome::from_json(j["criminal_outcome"]);
  if (j.contains("civil_results") && !j["civil_results"].is_null())
    out.civil_results = j["civil_results"].get<std::vector<std::string>>();
  out.analysis = j.value("analysis", "");
  out.validate();
  return out;
}

void Judgment::save(const std::filesystem::path& path) const {
  jsonl::write_text_atomic(path, to_json().dump(2) + "\n");
}

Judgment Judgment::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(jsonl::read_text(path)));
  } catch (const json::exception& e) {
    throw MalformedInputError(path.string() + ": " + e.what(), 0);
  }
}

std::vector<Judgment> load_judgments(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw PreconditionError("no judgment directory at " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Judgment> out;
  for (const auto& f : files) out.push_back(Judgment::load(f));
  return out;
}

}  // namespace lexcourt::adjudicator
