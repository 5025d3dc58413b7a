#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lexcourt/casegen/legal_case.hpp"

namespace lexcourt::adjudicator {

// Sentinel term for life imprisonment.
inline constexpr int kLifeImprisonment = -1;

struct CriminalOutcome {
  std::string charge;
  int prison_term_months = 0;  // kLifeImprisonment for life
  double fine_amount = 0.0;

  nlohmann::json to_json() const;
  static CriminalOutcome from_json(const nlohmann::json& j);
  bool operator==(const CriminalOutcome&) const = default;
};

// The judge's decision: legal dependency, results and analysis. Exactly one
// of criminal_outcome / civil_results is set, matching the case category.
struct Judgment {
  std::string case_id;
  std::vector<std::string> predicted_articles;
  std::optional<CriminalOutcome> criminal_outcome;
  std::optional<std::vector<std::string>> civil_results;
  std::string analysis;

  // Throws PreconditionError on invariant violation.
  void validate() const;
  void validate_for(CaseCategory category) const;

  nlohmann::json to_json() const;
  static Judgment from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static Judgment load(const std::filesystem::path& path);
};

// All *.json judgments of a directory, ordered by file name.
std::vector<Judgment> load_judgments(const std::filesystem::path& dir);

}  // namespace lexcourt::adjudicator
