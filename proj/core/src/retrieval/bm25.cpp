#include "lexcourt/retrieval/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lexcourt/errors.hpp"
#include "lexcourt/retrieval/tokenizer.hpp"

namespace lexcourt::retrieval {

Bm25Index Bm25Index::build(const std::vector<Document>& docs, Bm25Params params) {
  if (params.k1 < 0.0 || params.b < 0.0 || params.b > 1.0)
    throw PreconditionError("BM25 parameters out of range (k1 >= 0, 0 <= b <= 1)");
  Bm25Index index;
  index.params_ = params;
  std::unordered_set<std::string> seen;
  std::uint64_t total = 0;
  for (const auto& d : docs) {
    if (!seen.insert(d.id).second) throw ConflictError("duplicate doc_id '" + d.id + "'");
    const auto doc = static_cast<std::uint32_t>(index.doc_ids_.size());
    const auto terms = tokenize(d.text);
    std::unordered_map<std::string, std::uint32_t> tf;
    for (const auto& t : terms) ++tf[t];
    for (auto& [term, count] : tf) index.postings_[term].push_back({doc, count});
    index.doc_ids_.push_back(d.id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(terms.size()));
    total += terms.size();
  }
  if (!docs.empty()) index.avg_doc_length_ = static_cast<double>(total) / static_cast<double>(docs.size());
  return index;
}

double Bm25Index::idf(const std::string& term) const {
  const auto* p = postings(term);
  const double df = p ? static_cast<double>(p->size()) : 0.0;
  const double n = static_cast<double>(doc_ids_.size());
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

const std::vector<Bm25Index::Posting>* Bm25Index::postings(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::vector<RankedHit> Bm25Index::search(std::string_view query, std::size_t k) const {
  if (k == 0 || doc_ids_.empty()) return {};
  std::vector<double> scores(doc_ids_.size(), 0.0);
  std::vector<char> touched(doc_ids_.size(), 0);
  const double k1 = params_.k1, b = params_.b;
  for (const auto& term : tokenize(query)) {
    const auto* plist = postings(term);
    if (!plist) continue;
    const double w = idf(term);
    for (const auto& p : *plist) {
      const double tf = p.tf;
      const double len_ratio = avg_doc_length_ > 0 ? doc_lengths_[p.doc] / avg_doc_length_ : 1.0;
      scores[p.doc] += w * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len_ratio));
      touched[p.doc] = 1;
    }
  }
  std::vector<RankedHit> hits;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (touched[i] && scores[i] > 0.0) hits.push_back({doc_ids_[i], scores[i], 0});
  finalize_ranking(hits, k);
  return hits;
}

void finalize_ranking(std::vector<RankedHit>& hits, std::size_t k) {
  const auto better = [](const RankedHit& a, const RankedHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  if (hits.size() > k) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), better);
    hits.resize(k);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }
  for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = i + 1;
}

}  // namespace lexcourt::retrieval
