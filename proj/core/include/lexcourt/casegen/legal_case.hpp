#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lexcourt {

enum class CaseCategory { criminal, civil, administrative };
enum class CaseOrigin { generated, ingested };

std::string to_string(CaseCategory c);
CaseCategory case_category_from_string(const std::string& s);

// A case the lawyers argue and the judge decides. Generated cases never
// carry a gold judgment.
struct LegalCase {
  std::string case_id;
  std::string facts;
  std::string indictment;
  std::string plea;
  std::vector<std::string> gold_articles;
  CaseCategory category = CaseCategory::civil;
  CaseOrigin origin = CaseOrigin::generated;
  std::optional<std::string> gold_judgment;

  bool is_criminal() const noexcept { return category == CaseCategory::criminal; }

  // Throws PreconditionError on invariant violation.
  void validate() const;

  nlohmann::json to_json() const;
  static LegalCase from_json(const nlohmann::json& j, std::size_t line = 0);
};

std::vector<LegalCase> load_cases(const std::string& path);

}  // namespace lexcourt
