#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/retrieval/bm25.hpp"

namespace lexcourt::retrieval {

// Contrastive example for fine-tuning an article retriever.
struct RetrieverTrainingExample {
  std::string query;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;

  nlohmann::json to_json() const;
};

// Per case: positives are the gold articles, negatives the BM25 top-k
// articles for the facts minus the gold set (BM25 order kept). An example
// is emitted even when some gold articles fall outside the top-k.
std::vector<RetrieverTrainingExample> build_training_data(const std::vector<LegalCase>& cases,
                                                          const Bm25Index& article_index,
                                                          std::size_t negatives_k = 50);

struct RecallReport {
  std::map<std::size_t, double> recall;  // k -> mean recall@k
  std::size_t n_queries = 0;

  nlohmann::json to_json() const;
};

inline const std::vector<std::size_t> kDefaultRecallKs = {100, 200, 500, 1000};

// recall@k = mean over queries of |top-k ∩ gold| / |gold|. Both maps must
// have the same keys (KeyMismatchError lists the strays); gold sets must be
// non-empty.
RecallReport recall_at_k(const std::map<std::string, std::vector<std::string>>& results,
                         const std::map<std::string, std::set<std::string>>& gold,
                         const std::vector<std::size_t>& ks = kDefaultRecallKs);

}  // namespace lexcourt::retrieval
