#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/retrieval/bm25.hpp"

namespace lexcourt::retrieval {

using gateway::Vector;

// Cosine similarity; 0 when either vector has zero norm. Throws
// PreconditionError on a length mismatch.
double cosine(std::span<const float> a, std::span<const float> b);

// Re-orders BM25 candidates by cosine(query, document) and keeps the top m.
// Equal cosines keep their prior BM25 order. Scores of the returned hits are
// the cosines; ranks restart at 1.
std::vector<RankedHit> rerank(const std::string& query, const std::vector<RankedHit>& hits,
                              const std::function<std::string(const std::string&)>& doc_text,
                              gateway::Gateway& gw, std::size_t m);

// Text embedded for an article; the cache digest is taken over this.
std::string article_embedding_text(const corpus::LawArticle& a);

// Article vectors for dense retrieval. Persisted as a little-endian float32
// matrix (`vectors.f32`) plus a JSON manifest (`vectors.json`) listing
// model_id, dimension, ids in row order and per-row content digests.
class ArticleVectorStore {
 public:
  static constexpr const char* kMatrixName = "vectors.f32";
  static constexpr const char* kManifestName = "vectors.json";

  ArticleVectorStore() = default;

  // Embeds every article through `gw`, reusing rows from `cache_dir` whose
  // (model_id, article_id, digest) still match, then rewrites the cache.
  static ArticleVectorStore build(const corpus::ArticleStore& articles, gateway::Gateway& gw,
                                  const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                                  std::size_t batch_size = 64);

  void save(const std::filesystem::path& dir) const;
  // Returns nullopt when no cache is present; throws ProtocolError on a
  // corrupt one.
  static std::optional<ArticleVectorStore> load(const std::filesystem::path& dir);

  bool ready() const noexcept { return !ids_.empty(); }
  const std::string& model_id() const noexcept { return model_id_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::span<const float> row(std::size_t i) const;

  // Top-k by cosine to `query`; ties by ascending article id.
  std::vector<RankedHit> search(std::span<const float> query, std::size_t k) const;

  // Embedding calls issued by the last build() (0 when fully cached).
  std::size_t embedded_rows() const noexcept { return embedded_rows_; }

 private:
  std::string model_id_;
  std::size_t dimension_ = 0;
  std::vector<std::string> ids_;
  std::vector<std::string> digests_;
  std::vector<float> matrix_;
  std::size_t embedded_rows_ = 0;
};

// Dense-only article retrieval: embed the facts, return the top-k articles.
// Throws NotReadyError if the store is empty or built with another model.
std::vector<RankedHit> retrieve_articles(const std::string& case_facts, const ArticleVectorStore& store,
                                         gateway::Gateway& gw, std::size_t k = 200);

}  // namespace lexcourt::retrieval
