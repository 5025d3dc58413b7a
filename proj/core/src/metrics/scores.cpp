#include "lexcourt/metrics/scores.hpp"

#include <cmath>
#include <cstdlib>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::metrics {

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

Prf article_prf(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  if (gold.empty()) throw PreconditionError("recall is undefined for an empty gold set");
  std::size_t hit = 0;
  for (const auto& p : predicted) hit += gold.count(p);
  Prf out;
  out.precision = predicted.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(predicted.size());
  out.recall = static_cast<double>(hit) / static_cast<double>(gold.size());
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

ArticleMetrics aggregate_articles(std::vector<CasePrf> per_case) {
  ArticleMetrics m;
  for (const auto& c : per_case) {
    m.precision += c.prf.precision;
    m.recall += c.prf.recall;
    m.f1 += c.prf.f1;
  }
  if (!per_case.empty()) {
    const auto n = static_cast<double>(per_case.size());
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
  }
  m.per_case = std::move(per_case);
  return m;
}

std::string normalize_charge(const std::string& charge) {
  std::u32string out;
  for (char32_t c : utf8::decode(charge)) {
    if (c >= U'！' && c <= U'～') c = c - U'！' + U'!';
    if (c == U'　' || c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') continue;
    out += c;
  }
  auto edge = [](char32_t c) { return c == U'罪' || c == U'犯'; };
  while (!out.empty() && edge(out.front())) out.erase(out.begin());
  while (!out.empty() && edge(out.back())) out.pop_back();
  return utf8::encode(out);
}

CriminalMatch match_criminal(const CriminalFields& predicted, const CriminalFields& reference,
                             const MatchTolerance& tolerance) {
  CriminalMatch m;
  if (predicted.charge && reference.charge) m.charge = normalize_charge(*predicted.charge) == normalize_charge(*reference.charge);
  else m.charge = !predicted.charge && !reference.charge;

  if (predicted.term_months && reference.term_months) {
    const int a = *predicted.term_months, b = *reference.term_months;
    if (a == kLifeTerm || b == kLifeTerm) m.term = a == b;
    else m.term = std::abs(a - b) <= tolerance.term_months;
  } else {
    m.term = !predicted.term_months && !reference.term_months;
  }

  if (predicted.fine_amount && reference.fine_amount)
    m.fine = std::fabs(*predicted.fine_amount - *reference.fine_amount) <= tolerance.fine_amount;
  else
    m.fine = !predicted.fine_amount && !reference.fine_amount;
  return m;
}

CriminalEval criminal_accuracy(const std::vector<CriminalFields>& predictions,
                               const std::vector<CriminalFields>& references, const MatchTolerance& tolerance) {
  if (predictions.size() != references.size())
    throw PreconditionError("criminal_accuracy needs aligned lists, got " + std::to_string(predictions.size()) +
                            " predictions for " + std::to_string(references.size()) + " references");
  CriminalEval e;
  e.n_cases = references.size();
  if (e.n_cases == 0) return e;
  std::size_t charge = 0, term = 0, fine = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const auto m = match_criminal(predictions[i], references[i], tolerance);
    charge += m.charge;
    term += m.term;
    fine += m.fine;
  }
  const auto n = static_cast<double>(e.n_cases);
  e.charge_accuracy = static_cast<double>(charge) / n;
  e.term_accuracy = static_cast<double>(term) / n;
  e.fine_accuracy = static_cast<double>(fine) / n;
  return e;
}

}  // namespace lexcourt::metrics
