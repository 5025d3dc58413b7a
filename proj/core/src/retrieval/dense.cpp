#include "lexcourt/retrieval/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/digest.hpp"
#include "lexcourt/util/jsonl.hpp"

namespace lexcourt::retrieval {

static_assert(std::endian::native == std::endian::little, "vector cache is written in native little-endian order");

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw PreconditionError("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<RankedHit> rerank(const std::string& query, const std::vector<RankedHit>& hits,
                              const std::function<std::string(const std::string&)>& doc_text,
                              gateway::Gateway& gw, std::size_t m) {
  if (hits.empty()) throw PreconditionError("rerank needs at least one candidate");
  if (m == 0) throw PreconditionError("rerank: m must be positive");
  std::vector<std::string> texts;
  texts.reserve(hits.size() + 1);
  texts.push_back(query);
  for (const auto& h : hits) texts.push_back(doc_text(h.doc_id));
  const auto vectors = gw.embed(std::move(texts));

  std::vector<RankedHit> out = hits;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].score = cosine(vectors[0], vectors[i + 1]);
  // Input order is the prior ranking; stable sort keeps it for ties.
  std::stable_sort(out.begin(), out.end(), [](const RankedHit& a, const RankedHit& b) { return a.score > b.score; });
  if (out.size() > m) out.resize(m);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

std::string article_embedding_text(const corpus::LawArticle& a) {
  return "《" + a.statute_name + "》第" + std::to_string(a.article_number) + "条 " + a.body;
}

std::span<const float> ArticleVectorStore::row(std::size_t i) const {
  return std::span<const float>(matrix_).subspan(i * dimension_, dimension_);
}

ArticleVectorStore ArticleVectorStore::build(const corpus::ArticleStore& articles, gateway::Gateway& gw,
                                             const std::optional<std::filesystem::path>& cache_dir,
                                             std::size_t batch_size) {
  if (batch_size == 0) throw PreconditionError("batch_size must be positive");
  const auto& model = gw.options().embedding_model_id;

  std::unordered_map<std::string, std::vector<float>> reusable;
  std::size_t cached_dim = 0;
  if (cache_dir) {
    if (auto cached = load(*cache_dir); cached && cached->model_id_ == model) {
      cached_dim = cached->dimension_;
      for (std::size_t i = 0; i < cached->ids_.size(); ++i) {
        const auto r = cached->row(i);
        reusable.emplace(cached->ids_[i] + "\n" + cached->digests_[i], std::vector<float>(r.begin(), r.end()));
      }
    }
  }

  ArticleVectorStore store;
  store.model_id_ = model;
  const auto& all = articles.all();
  std::vector<std::vector<float>> rows(all.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto text = article_embedding_text(all[i]);
    store.ids_.push_back(all[i].article_id);
    store.digests_.push_back(sha256_hex(text));
    auto it = reusable.find(all[i].article_id + "\n" + store.digests_.back());
    if (it != reusable.end()) rows[i] = std::move(it->second);
    else missing.push_back(i);
  }
  for (std::size_t start = 0; start < missing.size(); start += batch_size) {
    const auto end = std::min(missing.size(), start + batch_size);
    std::vector<std::string> texts;
    for (auto k = start; k < end; ++k) texts.push_back(article_embedding_text(all[missing[k]]));
    auto vecs = gw.embed(std::move(texts));
    for (auto k = start; k < end; ++k) rows[missing[k]] = std::move(vecs[k - start]);
  }
  store.embedded_rows_ = missing.size();

  store.dimension_ = rows.empty() ? 0 : rows.front().size();
  if (cached_dim && !missing.empty() && cached_dim != store.dimension_) {
    // The provider changed dimension under the same model id; start over.
    return build(articles, gw, std::nullopt, batch_size);
  }
  store.matrix_.reserve(rows.size() * store.dimension_);
  for (const auto& r : rows) {
    if (r.size() != store.dimension_) throw ProtocolError("article vectors differ in dimension");
    store.matrix_.insert(store.matrix_.end(), r.begin(), r.end());
  }
  if (cache_dir && store.ready()) store.save(*cache_dir);
  return store;
}

void ArticleVectorStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto matrix_path = dir / kMatrixName;
  auto tmp = matrix_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(matrix_.data()),
              static_cast<std::streamsize>(matrix_.size() * sizeof(float)));
  }
  std::filesystem::rename(tmp, matrix_path);
  const nlohmann::json manifest = {
      {"model_id", model_id_}, {"dimension", dimension_}, {"ids", ids_}, {"digests", digests_}};
  jsonl::write_text_atomic(dir / kManifestName, manifest.dump(2) + "\n");
}

std::optional<ArticleVectorStore> ArticleVectorStore::load(const std::filesystem::path& dir) {
  const auto manifest_path = dir / kManifestName;
  const auto matrix_path = dir / kMatrixName;
  if (!std::filesystem::exists(manifest_path) || !std::filesystem::exists(matrix_path)) return std::nullopt;
  ArticleVectorStore store;
  try {
    const auto manifest = nlohmann::json::parse(jsonl::read_text(manifest_path));
    store.model_id_ = manifest.at("model_id").get<std::string>();
    store.dimension_ = manifest.at("dimension").get<std::size_t>();
    store.ids_ = manifest.at("ids").get<std::vector<std::string>>();
    store.digests_ = manifest.value("digests", std::vector<std::string>(store.ids_.size()));
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError("corrupt vector manifest: " + std::string(e.what()));
  }
  const auto expected = store.ids_.size() * store.dimension_;
  if (std::filesystem::file_size(matrix_path) != expected * sizeof(float) ||
      store.digests_.size() != store.ids_.size())
    throw ProtocolError("vector cache size does not match its manifest");
  store.matrix_.resize(expected);
  std::ifstream in(matrix_path, std::ios::binary);
  in.read(reinterpret_cast<char*>(store.matrix_.data()), static_cast<std::streamsize>(expected * sizeof(float)));
  return store;
}

std::vector<RankedHit> ArticleVectorStore::search(std::span<const float> query, std::size_t k) const {
  if (query.size() != dimension_) throw PreconditionError("query dimension does not match the article store");
  std::vector<RankedHit> hits;
  hits.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) hits.push_back({ids_[i], cosine(query, row(i)), 0});
  finalize_ranking(hits, k);
  return hits;
}

std::vector<RankedHit> retrieve_articles(const std::string& case_facts, const ArticleVectorStore& store,
                                         gateway::Gateway& gw, std::size_t k) {
  if (!store.ready()) throw NotReadyError("article vectors have not been computed");
  if (store.model_id() != gw.options().embedding_model_id)
    throw NotReadyError("article vectors were built with '" + store.model_id() + "', gateway embeds with '" +
                        gw.options().embedding_model_id + "'");
  const auto q = gw.embed(std::vector<std::string>{case_facts});
  return store.search(q.front(), k);
}

}  // namespace lexcourt::retrieval
