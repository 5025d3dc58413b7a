#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexcourt/corpus/types.hpp"

namespace lexcourt::corpus {

// Statute-article corpus. Backed by an append-only JSONL segment when opened
// on a directory; purely in-memory otherwise. Ingest is all-or-nothing per
// file and single-writer; concurrent reads are safe once ingest returns.
class ArticleStore {
 public:
  static constexpr const char* kSegmentName = "articles.seg.jsonl";

  ArticleStore() = default;
  // Rebuilds the id index from `dir`/articles.seg.jsonl (if present).
  static ArticleStore open(const std::filesystem::path& dir);

  // Returns the number ingested. Malformed line -> MalformedInputError,
  // duplicate id (in file or against the store) -> ConflictError; in both
  // cases nothing from the file is committed.
  std::size_t ingest_file(const std::filesystem::path& path);
  std::size_t ingest(std::vector<LawArticle> articles);

  const LawArticle* find(const std::string& article_id) const;
  const LawArticle& at(const std::string& article_id) const;
  bool contains(const std::string& article_id) const { return find(article_id) != nullptr; }

  // Looks an article up by citation (statute name compared normalized).
  std::optional<std::string> resolve(const std::string& statute_name, int article_number) const;

  const std::vector<LawArticle>& all() const noexcept { return articles_; }
  std::size_t size() const noexcept { return articles_.size(); }
  bool empty() const noexcept { return articles_.empty(); }
  std::size_t count(std::optional<ArticleCategory> category) const;

  // n distinct articles drawn uniformly (optionally within one category).
  // Same seed and corpus give the same sample. Throws
  // InsufficientCorpusError when the pool is smaller than n.
  std::vector<LawArticle> sample(std::size_t n, std::optional<ArticleCategory> category,
                                 std::uint64_t seed) const;

 private:
  void commit(std::vector<LawArticle> batch);

  std::optional<std::filesystem::path> segment_;
  std::vector<LawArticle> articles_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> by_citation_;
};

class CaseStore {
 public:
  static constexpr const char* kSegmentName = "cases.seg.jsonl";

  CaseStore() = default;
  static CaseStore open(const std::filesystem::path& dir);

  // Applies `rules` to case_name and full_text before anything is stored.
  // When `strict_articles` is given, every relevant article must resolve.
  std::size_t ingest_file(const std::filesystem::path& path, const std::vector<RedactionRule>& rules,
                          const ArticleStore* strict_articles = nullptr);
  std::size_t ingest(std::vector<CorpusCase> cases, const std::vector<RedactionRule>& rules = {});

  const CorpusCase* find(const std::string& case_id) const;
  const CorpusCase& at(const std::string& case_id) const;
  const std::vector<CorpusCase>& all() const noexcept { return cases_; }
  std::size_t size() const noexcept { return cases_.size(); }
  bool empty() const noexcept { return cases_.empty(); }

 private:
  void commit(std::vector<CorpusCase> batch);

  std::optional<std::filesystem::path> segment_;
  std::vector<CorpusCase> cases_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace lexcourt::corpus
