#include "lexcourt/corpus/store.hpp"

#include <unordered_set>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"
#include "lexcourt/util/rng.hpp"

namespace lexcourt::corpus {

namespace {

std::string citation_key(const std::string& statute, int number) {
  return normalize_statute_name(statute) + "#" + std::to_string(number);
}

}  // namespace

ArticleStore ArticleStore::open(const std::filesystem::path& dir) {
  ArticleStore store;
  std::filesystem::create_directories(dir);
  const auto seg = dir / kSegmentName;
  if (std::filesystem::exists(seg)) {
    std::vector<LawArticle> batch;
    for (const auto& line : jsonl::read(seg)) batch.push_back(LawArticle::from_json(line.value, line.number));
    store.ingest(std::move(batch));
  }
  store.segment_ = seg;
  return store;
}

std::size_t ArticleStore::ingest_file(const std::filesystem::path& path) {
  std::vector<LawArticle> batch;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& line : jsonl::read(path)) {
    auto a = LawArticle::from_json(line.value, line.number);
    if (by_id_.count(a.article_id) || seen.count(a.article_id))
      throw ConflictError("line " + std::to_string(line.number) + ": duplicate article_id '" + a.article_id + "'",
                          line.number);
    seen.emplace(a.article_id, line.number);
    batch.push_back(std::move(a));
  }
  const auto n = batch.size();
  commit(std::move(batch));
  return n;
}

std::size_t ArticleStore::ingest(std::vector<LawArticle> articles) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& id = articles[i].article_id;
    if (id.empty()) throw MalformedInputError("article " + std::to_string(i + 1) + " has an empty id", i + 1);
    if (by_id_.count(id) || !seen.insert(id).second)
      throw ConflictError("duplicate article_id '" + id + "'", i + 1);
  }
  const auto n = articles.size();
  commit(std::move(articles));
  return n;
}

void ArticleStore::commit(std::vector<LawArticle> batch) {
  if (batch.empty()) return;
  if (segment_) {
    std::vector<nlohmann::json> rows;
    rows.reserve(batch.size());
    for (const auto& a : batch) rows.push_back(a.to_json());
    jsonl::append(*segment_, rows);
  }
  for (auto& a : batch) {
    by_id_.emplace(a.article_id, articles_.size());
    by_citation_.emplace(citation_key(a.statute_name, a.article_number), articles_.size());
    articles_.push_back(std::move(a));
  }
}

const LawArticle* ArticleStore::find(const std::string& article_id) const {
  auto it = by_id_.find(article_id);
  return it == by_id_.end() ? nullptr : &articles_[it->second];
}

const LawArticle& ArticleStore::at(const std::string& article_id) const {
  if (const auto* a = find(article_id)) return *a;
  throw PreconditionError("unknown article_id '" + article_id + "'");
}

std::optional<std::string> ArticleStore::resolve(const std::string& statute_name, int article_number) const {
  auto it = by_citation_.find(citation_key(statute_name, article_number));
  if (it == by_citation_.end()) return std::nullopt;
  return articles_[it->second].article_id;
}

std::size_t ArticleStore::count(std::optional<ArticleCategory> category) const {
  if (!category) return articles_.size();
  std::size_t n = 0;
  for (const auto& a : articles_) n += a.category == *category;
  return n;
}

std::vector<LawArticle> ArticleStore::sample(std::size_t n, std::optional<ArticleCategory> category,
                                             std::uint64_t seed) const {
  if (n == 0) throw PreconditionError("sample size must be positive");
  std::vector<const LawArticle*> pool;
  for (const auto& a : articles_)
    if (!category || a.category == *category) pool.push_back(&a);
  if (pool.size() < n)
    throw InsufficientCorpusError("requested " + std::to_string(n) + " articles but only " +
                                  std::to_string(pool.size()) + " are available");
  DeterministicRng rng(seed);
  std::vector<LawArticle> out;
  out.reserve(n);
  for (auto idx : rng.sample_indices(pool.size(), n)) out.push_back(*pool[idx]);
  return out;
}

CaseStore CaseStore::open(const std::filesystem::path& dir) {
  CaseStore store;
  std::filesystem::create_directories(dir);
  const auto seg = dir / kSegmentName;
  if (std::filesystem::exists(seg)) {
    std::vector<CorpusCase> batch;
    for (const auto& line : jsonl::read(seg)) batch.push_back(CorpusCase::from_json(line.value, line.number));
    store.ingest(std::move(batch));
  }
  store.segment_ = seg;
  return store;
}

std::size_t CaseStore::ingest_file(const std::filesystem::path& path, const std::vector<RedactionRule>& rules,
                                   const ArticleStore* strict_articles) {
  std::vector<CorpusCase> batch;
  std::unordered_set<std::string> seen;
  for (const auto& line : jsonl::read(path)) {
    auto c = CorpusCase::from_json(line.value, line.number);
    if (by_id_.count(c.case_id) || !seen.insert(c.case_id).second)
      throw ConflictError("line " + std::to_string(line.number) + ": duplicate case_id '" + c.case_id + "'",
                          line.number);
    if (strict_articles) {
      for (const auto& a : c.relevant_articles) {
        if (!strict_articles->contains(a))
          throw MalformedInputError(
              "line " + std::to_string(line.number) + ": relevant article '" + a + "' is not in the corpus",
              line.number);
      }
    }
    c.case_name = redact(c.case_name, rules);
    c.full_text = redact(c.full_text, rules);
    batch.push_back(std::move(c));
  }
  const auto n = batch.size();
  commit(std::move(batch));
  return n;
}

std::size_t CaseStore::ingest(std::vector<CorpusCase> cases, const std::vector<RedactionRule>& rules) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (by_id_.count(cases[i].case_id) || !seen.insert(cases[i].case_id).second)
      throw ConflictError("duplicate case_id '" + cases[i].case_id + "'", i + 1);
  }
  for (auto& c : cases) {
    c.case_name = redact(c.case_name, rules);
    c.full_text = redact(c.full_text, rules);
  }
  const auto n = cases.size();
  commit(std::move(cases));
  return n;
}

void CaseStore::commit(std::vector<CorpusCase> batch) {
  if (batch.empty()) return;
  if (segment_) {
    std::vector<nlohmann::json> rows;
    for (const auto& c : batch) rows.push_back(c.to_json());
    jsonl::append(*segment_, rows);
  }
  for (auto& c : batch) {
    by_id_.emplace(c.case_id, cases_.size());
    cases_.push_back(std::move(c));
  }
}

const CorpusCase* CaseStore::find(const std::string& case_id) const {
  auto it = by_id_.find(case_id);
  return it == by_id_.end() ? nullptr : &cases_[it->second];
}

const CorpusCase& CaseStore::at(const std::string& case_id) const {
  if (const auto* c = find(case_id)) return *c;
  throw PreconditionError("unknown case_id '" + case_id + "'");
}

}  // namespace lexcourt::corpus
