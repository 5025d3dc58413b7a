#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"

namespace lexcourt::casegen {

inline constexpr const char* kTaskGenerate = "case.generate";
inline constexpr const char* kTaskVet = "case.vet";

// Outcome of the rejection-sampling gate. The case is kept only when all
// four checks pass.
struct QualityVerdict {
  bool correctness = false;  // could happen in the real world
  bool reality = false;      // grounded in the supplied articles
  bool rationality = false;  // both sides' claims are legally reasonable
  bool complexity_pass = false;
  std::string rationale;

  bool accepted() const noexcept { return correctness && reality && rationality && complexity_pass; }

  nlohmann::json to_json() const;
  static QualityVerdict from_json(const nlohmann::json& j);
};

gateway::ChatRequest generation_request(const gateway::Gateway& gw, const std::vector<corpus::LawArticle>& articles,
                                        CaseCategory category);
gateway::ChatRequest vetting_request(const gateway::Gateway& gw, const LegalCase& c,
                                     const std::vector<corpus::LawArticle>& articles);

// Category a generated case takes from its articles: any criminal article
// makes it criminal; otherwise administrative statutes (名称含"行政")
// make it administrative, and everything else is civil.
CaseCategory infer_category(const std::vector<corpus::LawArticle>& articles);

// Asks the generator for facts / indictment / plea as a JSON object.
// Requires 2..5 articles. Unusable replies end in FormatError("generation").
LegalCase generate_case(const std::vector<corpus::LawArticle>& articles, gateway::Gateway& gw,
                        const std::string& case_id);

// Unparseable verdicts end in FormatError("evaluation").
QualityVerdict vet_case(const LegalCase& c, const std::vector<corpus::LawArticle>& articles, gateway::Gateway& gw);

struct ForgeOptions {
  std::size_t n_target = 1;
  std::size_t max_attempts_per_case = 5;
  std::uint64_t seed = 42;
  std::size_t min_articles = 2;
  std::size_t max_articles = 5;
  std::string id_prefix = "gen";
};

struct VettedCase {
  LegalCase legal_case;
  QualityVerdict verdict;
};

struct RejectionRecord {
  std::string case_attempt_id;
  QualityVerdict verdict;
  std::string rationale;

  nlohmann::json to_json() const;
};

struct ForgeStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t format_failures = 0;  // attempts whose generation or vetting reply was unusable
  std::size_t exhausted_slots = 0;  // target slots that ran out of attempts

  double acceptance_rate() const noexcept {
    return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
  }
  nlohmann::json to_json() const;
};

struct ForgeResult {
  std::vector<VettedCase> accepted;
  std::vector<RejectionRecord> rejections;
  ForgeStats stats;
};

class ForgeExhaustedError : public Error {
 public:
  ForgeExhaustedError(const std::string& what, ForgeStats stats) : Error(what), stats_(stats) {}
  const ForgeStats& stats() const noexcept { return stats_; }

 private:
  ForgeStats stats_;
};

// Rejection-sampling loop: for each of n_target slots, sample articles,
// generate, vet; a rejected attempt retries the slot with a fresh sample,
// up to max_attempts_per_case. Zero accepted cases overall raises
// ForgeExhaustedError. Deterministic for a fixed seed and pure provider.
ForgeResult forge_batch(const corpus::ArticleStore& articles, gateway::Gateway& generator, gateway::Gateway& vetter,
                        const ForgeOptions& options);

}  // namespace lexcourt::casegen
