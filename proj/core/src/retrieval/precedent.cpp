#include "lexcourt/retrieval/precedent.hpp"

#include "lexcourt/retrieval/dense.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::retrieval {

CaseIndex CaseIndex::build(const corpus::CaseStore& cases, Bm25Params params) {
  CaseIndex idx;
  idx.cases_ = &cases;
  std::vector<Document> docs;
  docs.reserve(cases.size());
  for (const auto& c : cases.all())
    docs.push_back({c.case_id, c.case_name + "\n" + c.action_cause + "\n" + c.full_text});
  idx.index_ = Bm25Index::build(docs, params);
  return idx;
}

std::string CaseIndex::rerank_text(const std::string& case_id, std::size_t max_chars) const {
  const auto& c = cases_->at(case_id);
  auto cps = utf8::decode(c.case_name + "\n" + c.full_text);
  if (cps.size() > max_chars) cps.resize(max_chars);
  return utf8::encode(cps);
}

std::optional<corpus::CorpusCase> retrieve_precedent(const std::string& case_facts, const CaseIndex& index,
                                                     gateway::Gateway& gw, const PrecedentOptions& options) {
  if (index.empty()) return std::nullopt;
  const auto candidates = index.bm25().search(case_facts, options.bm25_k);
  if (candidates.empty()) return std::nullopt;
  const auto best = rerank(case_facts, candidates, [&](const std::string& id) { return index.rerank_text(id); }, gw,
                           options.rerank_m);
  return index.cases().at(best.front().doc_id);
}

}  // namespace lexcourt::retrieval
