#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexcourt::retrieval {

struct RankedHit {
  std::string doc_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
};

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

struct Document {
  std::string id;
  std::string text;
};

// Immutable Okapi BM25 inverted index.
//
//   score(q, d) = sum over query terms t (repeats counted) of
//                 idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |d| / avgdl))
//   idf(t)      = ln((N - df + 0.5) / (df + 0.5) + 1)
//
// The +1 keeps idf positive, so every document sharing a term scores > 0.
class Bm25Index {
 public:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t tf;
  };

  Bm25Index() = default;

  // Throws ConflictError on a duplicate id and PreconditionError on params
  // outside k1 >= 0, b in [0, 1].
  static Bm25Index build(const std::vector<Document>& docs, Bm25Params params = {});

  // Top-k by score; ties by ascending doc id; zero scores excluded.
  std::vector<RankedHit> search(std::string_view query, std::size_t k) const;

  double idf(const std::string& term) const;

  std::size_t size() const noexcept { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
  const std::vector<std::uint32_t>& doc_lengths() const noexcept { return doc_lengths_; }
  double avg_doc_length() const noexcept { return avg_doc_length_; }
  const Bm25Params& params() const noexcept { return params_; }
  const std::vector<Posting>* postings(const std::string& term) const;

 private:
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  double avg_doc_length_ = 0.0;
  Bm25Params params_;
};

// Sorts by score descending then doc id ascending, keeps the first k and
// assigns ranks 1..k.
void finalize_ranking(std::vector<RankedHit>& hits, std::size_t k);

}  // namespace lexcourt::retrieval
