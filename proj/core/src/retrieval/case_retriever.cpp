#include "lexcourt/retrieval/case_retriever.hpp"

namespace lexcourt::retrieval {

HybridRetriever::HybridRetriever(const corpus::ArticleStore& articles, const ArticleVectorStore& vectors,
                                 const CaseIndex* cases, gateway::Gateway& embedder, HybridOptions options)
    : articles_(articles), vectors_(vectors), cases_(cases), embedder_(embedder), options_(options) {}

RetrievalBundle HybridRetriever::retrieve(const LegalCase& c) {
  std::lock_guard lock(mu_);
  if (auto it = memo_.find(c.case_id); it != memo_.end()) return it->second;
  RetrievalBundle bundle;
  for (const auto& hit : retrieve_articles(c.facts, vectors_, embedder_, options_.article_k)) {
    const auto& a = articles_.at(hit.doc_id);
    bundle.articles.push_back({a.article_id, article_embedding_text(a), hit.score});
  }
  if (cases_) bundle.precedent = retrieve_precedent(c.facts, *cases_, embedder_, options_.precedent);
  memo_.emplace(c.case_id, bundle);
  return bundle;
}

}  // namespace lexcourt::retrieval
