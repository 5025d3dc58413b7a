#pragma once

#include <optional>
#include <string>

#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/retrieval/bm25.hpp"

namespace lexcourt::retrieval {

// Lexical index over the case corpus plus the store it was built from.
class CaseIndex {
 public:
  static CaseIndex build(const corpus::CaseStore& cases, Bm25Params params = {});

  const corpus::CaseStore& cases() const noexcept { return *cases_; }
  const Bm25Index& bm25() const noexcept { return index_; }
  bool empty() const noexcept { return index_.size() == 0; }

  // Text the reranker embeds for a case, capped at `max_chars` code points.
  std::string rerank_text(const std::string& case_id, std::size_t max_chars = 2000) const;

 private:
  const corpus::CaseStore* cases_ = nullptr;
  Bm25Index index_;
};

struct PrecedentOptions {
  std::size_t bm25_k = 100;
  std::size_t rerank_m = 1;
};

// BM25 top-k candidates, embedding rerank, best case. nullopt when the
// corpus is empty or nothing shares a term with the facts.
std::optional<corpus::CorpusCase> retrieve_precedent(const std::string& case_facts, const CaseIndex& index,
                                                     gateway::Gateway& gw, const PrecedentOptions& options = {});

}  // namespace lexcourt::retrieval
