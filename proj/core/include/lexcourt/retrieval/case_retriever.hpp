#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/retrieval/dense.hpp"
#include "lexcourt/retrieval/precedent.hpp"

namespace lexcourt::retrieval {

struct RetrievedArticle {
  std::string article_id;
  std::string text;  // citation plus body
  double score = 0.0;
};

// Everything retrieved for one case: ranked candidate articles and at most
// one precedent.
struct RetrievalBundle {
  std::vector<RetrievedArticle> articles;
  std::optional<corpus::CorpusCase> precedent;
};

// Source of retrieved materials for lawyers and the judge.
class CaseRetriever {
 public:
  virtual ~CaseRetriever() = default;
  virtual RetrievalBundle retrieve(const LegalCase& c) = 0;
};

// Always returns the same bundle; for tests and offline fixtures.
class StaticRetriever final : public CaseRetriever {
 public:
  explicit StaticRetriever(RetrievalBundle bundle) : bundle_(std::move(bundle)) {}
  RetrievalBundle retrieve(const LegalCase&) override { return bundle_; }

 private:
  RetrievalBundle bundle_;
};

// Retrieves nothing (ablation without retrieval).
class NullRetriever final : public CaseRetriever {
 public:
  RetrievalBundle retrieve(const LegalCase&) override { return {}; }
};

struct HybridOptions {
  std::size_t article_k = 200;
  PrecedentOptions precedent;
};

// Dense top-k articles plus the BM25 -> rerank precedent. Bundles are
// memoised per case id; safe to share between threads.
class HybridRetriever final : public CaseRetriever {
 public:
  HybridRetriever(const corpus::ArticleStore& articles, const ArticleVectorStore& vectors, const CaseIndex* cases,
                  gateway::Gateway& embedder, HybridOptions options = {});

  RetrievalBundle retrieve(const LegalCase& c) override;

 private:
  const corpus::ArticleStore& articles_;
  const ArticleVectorStore& vectors_;
  const CaseIndex* cases_;
  gateway::Gateway& embedder_;
  HybridOptions options_;
  std::mutex mu_;
  std::map<std::string, RetrievalBundle> memo_;
};

}  // namespace lexcourt::retrieval
