#include "lexcourt/retrieval/training.hpp"

#include <algorithm>
#include <unordered_set>

#include "lexcourt/errors.hpp"

namespace lexcourt::retrieval {

nlohmann::json RetrieverTrainingExample::to_json() const {
  return {{"query", query}, {"positives", positives}, {"negatives", negatives}};
}

std::vector<RetrieverTrainingExample> build_training_data(const std::vector<LegalCase>& cases,
                                                          const Bm25Index& article_index,
                                                          std::size_t negatives_k) {
  std::vector<RetrieverTrainingExample> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    RetrieverTrainingExample ex;
    ex.query = c.facts;
    ex.positives = c.gold_articles;
    const std::unordered_set<std::string> gold(c.gold_articles.begin(), c.gold_articles.end());
    for (const auto& hit : article_index.search(c.facts, negatives_k))
      if (!gold.count(hit.doc_id)) ex.negatives.push_back(hit.doc_id);
    out.push_back(std::move(ex));
  }
  return out;
}

nlohmann::json RecallReport::to_json() const {
  nlohmann::json per_k = nlohmann::json::object();
  for (const auto& [k, v] : recall) per_k["recall@" + std::to_string(k)] = v;
  return {{"n_queries", n_queries}, {"recall", per_k}};
}

RecallReport recall_at_k(const std::map<std::string, std::vector<std::string>>& results,
                         const std::map<std::string, std::set<std::string>>& gold, const std::vector<std::size_t>& ks) {
  std::vector<std::string> strays;
  for (const auto& [q, _] : results)
    if (!gold.count(q)) strays.push_back(q);
  for (const auto& [q, _] : gold)
    if (!results.count(q)) strays.push_back(q);
  if (!strays.empty()) throw KeyMismatchError("result and gold query keys differ:", strays);
  if (ks.empty()) throw PreconditionError("recall_at_k needs at least one k");

  RecallReport report;
  report.n_queries = gold.size();
  for (auto k : ks) report.recall[k] = 0.0;
  if (gold.empty()) return report;

  for (const auto& [q, gold_set] : gold) {
    if (gold_set.empty()) throw PreconditionError("query '" + q + "' has an empty gold set");
    const auto& ranked = results.at(q);
    for (auto k : ks) {
      std::size_t found = 0;
      std::unordered_set<std::string> counted;
      for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i)
        if (gold_set.count(ranked[i]) && counted.insert(ranked[i]).second) ++found;
      report.recall[k] += static_cast<double>(found) / static_cast<double>(gold_set.size());
    }
  }
  for (auto& [k, v] : report.recall) v /= static_cast<double>(gold.size());
  return report;
}

}  // namespace lexcourt::retrieval
