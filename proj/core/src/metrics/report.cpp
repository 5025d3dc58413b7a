#include "lexcourt/metrics/report.hpp"

#include <cstdio>
#include <map>

#include "lexcourt/errors.hpp"

namespace lexcourt::metrics {

using nlohmann::json;

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  // Column widths count bytes; ids are ASCII.
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

Prediction prediction_from_judgment(const adjudicator::Judgment& j) {
  Prediction p;
  p.case_id = j.case_id;
  p.articles.insert(j.predicted_articles.begin(), j.predicted_articles.end());
  if (j.criminal_outcome) {
    CriminalFields f;
    f.charge = j.criminal_outcome->charge;
    if (j.criminal_outcome->prison_term_months != 0) f.term_months = j.criminal_outcome->prison_term_months;
    if (j.criminal_outcome->fine_amount != 0.0) f.fine_amount = j.criminal_outcome->fine_amount;
    p.criminal = f;
  }
  if (j.civil_results) p.civil_results = *j.civil_results;
  return p;
}

Prediction prediction_from_text(const std::string& case_id, const std::string& text, CaseCategory category,
                                const corpus::ArticleStore& articles) {
  Prediction p;
  p.case_id = case_id;
  for (auto& id : resolve_article_refs(extract_article_refs(text), articles)) p.articles.insert(std::move(id));
  if (category == CaseCategory::criminal) p.criminal = extract_criminal(text);
  else p.civil_text = text;
  return p;
}

MetricsReport build_report(const std::vector<Prediction>& predictions, const std::vector<LegalCase>& references,
                           gateway::Gateway* gw, const ReportOptions& options) {
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions) by_id[p.case_id] = &p;
  std::set<std::string> ref_ids;
  std::vector<std::string> stray;
  for (const auto& r : references) {
    ref_ids.insert(r.case_id);
    if (!by_id.count(r.case_id)) stray.push_back(r.case_id + " (no judgment)");
  }
  for (const auto& p : predictions)
    if (!ref_ids.count(p.case_id)) stray.push_back(p.case_id + " (no reference)");
  if (!stray.empty()) throw KeyMismatchError("judgments and references disagree on case ids", stray);

  MetricsReport report;
  report.options = options;
  std::vector<CasePrf> prf;
  std::vector<CriminalFields> crim_pred, crim_ref;
  std::vector<std::string> crim_ids;
  double civil_sum = 0.0;

  for (const auto& ref : references) {
    const auto& pred = *by_id.at(ref.case_id);
    const std::set<std::string> gold(ref.gold_articles.begin(), ref.gold_articles.end());
    prf.push_back({ref.case_id, article_prf(pred.articles, gold)});

    if (!ref.gold_judgment) {
      report.warnings.push_back(ref.case_id + ": no gold judgment, outcome metrics skipped");
      continue;
    }
    if (ref.is_criminal()) {
      crim_ids.push_back(ref.case_id);
      crim_ref.push_back(extract_criminal(*ref.gold_judgment));
      crim_pred.push_back(pred.criminal.value_or(CriminalFields{}));
      continue;
    }
    if (!gw) {
      report.warnings.push_back(ref.case_id + ": no gateway for civil matching, civil metrics skipped");
      continue;
    }
    try {
      const auto gold_results = summarize_civil(*ref.gold_judgment, *gw);
      std::vector<std::string> candidate;
      if (pred.civil_results) candidate = *pred.civil_results;
      else if (pred.civil_text) candidate = summarize_civil(*pred.civil_text, *gw);
      CaseCivil row{ref.case_id, {}};
      if (candidate.empty()) row.match.matches.assign(gold_results.size(), 0);
      else row.match = match_civil(gold_results, candidate, *gw);
      civil_sum += row.match.accuracy();
      report.civil_per_case.push_back(std::move(row));
    } catch (const FormatError& e) {
      report.warnings.push_back(ref.case_id + ": " + e.what());
    }
  }

  report.articles = aggregate_articles(std::move(prf));
  report.criminal = criminal_accuracy(crim_pred, crim_ref, options.tolerance);
  for (std::size_t i = 0; i < crim_ids.size(); ++i)
    report.criminal_per_case.push_back({crim_ids[i], match_criminal(crim_pred[i], crim_ref[i], options.tolerance)});
  if (!report.civil_per_case.empty()) report.civil_accuracy = civil_sum / static_cast<double>(report.civil_per_case.size());
  return report;
}

json MetricsReport::to_json() const {
  json per_case = json::array();
  for (const auto& c : articles.per_case)
    per_case.push_back({{"case_id", c.case_id}, {"p", c.prf.precision}, {"r", c.prf.recall}, {"f1", c.prf.f1}});
  json crim_rows = json::array();
  for (const auto& c : criminal_per_case)
    crim_rows.push_back({{"case_id", c.case_id}, {"charge", c.match.charge}, {"term", c.match.term}, {"fine", c.match.fine}});
  json civil_rows = json::array();
  for (const auto& c : civil_per_case)
    civil_rows.push_back({{"case_id", c.case_id}, {"matches", c.match.matches}, {"accuracy", c.match.accuracy()}});
  return {
      {"articles", {{"precision", articles.precision}, {"recall", articles.recall}, {"f1", articles.f1}, {"per_case", per_case}}},
      {"criminal",
       {{"charge", criminal.charge_accuracy},
        {"term", criminal.term_accuracy},
        {"fine", criminal.fine_accuracy},
        {"n", criminal.n_cases},
        {"per_case", crim_rows}}},
      {"civil", {{"accuracy", civil_accuracy}, {"n", civil_per_case.size()}, {"per_case", civil_rows}}},
      {"case_analysis", {{"correct", nullptr}, {"logic", nullptr}, {"concise", nullptr}}},
      {"warnings", warnings},
      {"metadata",
       {{"averaging", "macro"},
        {"term_tolerance_months", options.tolerance.term_months},
        {"fine_tolerance", options.tolerance.fine_amount}}}};
}

std::string MetricsReport::to_text() const {
  std::string out;
  out += pad("", 18) + pad("P", 9) + pad("R", 9) + "F1\n";
  out += pad("Legal articles", 18) + pad(fixed(articles.precision), 9) + pad(fixed(articles.recall), 9) +
         fixed(articles.f1) + "\n\n";
  out += pad("", 18) + pad("Charge", 9) + pad("Term", 9) + pad("Fine", 9) + "n\n";
  out += pad("Criminal", 18) + pad(fixed(criminal.charge_accuracy), 9) + pad(fixed(criminal.term_accuracy), 9) +
         pad(fixed(criminal.fine_accuracy), 9) + std::to_string(criminal.n_cases) + "\n\n";
  out += pad("", 18) + pad("Acc", 9) + "n\n";
  out += pad("Civil and admin.", 18) + pad(fixed(civil_accuracy), 9) + std::to_string(civil_per_case.size()) + "\n\n";

  std::map<std::string, const CaseCriminal*> crim;
  for (const auto& c : criminal_per_case) crim[c.case_id] = &c;
  std::map<std::string, const CaseCivil*> civ;
  for (const auto& c : civil_per_case) civ[c.case_id] = &c;
  std::size_t id_width = 8;
  for (const auto& c : articles.per_case) id_width = std::max(id_width, c.case_id.size() + 2);

  out += pad("case", id_width) + pad("P", 9) + pad("R", 9) + pad("F1", 9) + "outcome\n";
  for (const auto& c : articles.per_case) {
    std::string outcome = "-";
    if (auto it = crim.find(c.case_id); it != crim.end()) {
      const auto& m = it->second->match;
      outcome = std::string("charge=") + (m.charge ? "1" : "0") + " term=" + (m.term ? "1" : "0") +
                " fine=" + (m.fine ? "1" : "0");
    } else if (auto jt = civ.find(c.case_id); jt != civ.end()) {
      outcome = "civil=" + fixed(jt->second->match.accuracy());
    }
    out += pad(c.case_id, id_width) + pad(fixed(c.prf.precision), 9) + pad(fixed(c.prf.recall), 9) +
           pad(fixed(c.prf.f1), 9) + outcome + "\n";
  }
  for (const auto& w : warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace lexcourt::metrics
