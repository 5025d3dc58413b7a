#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexcourt/adjudicator/judgment.hpp"
#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/metrics/civil.hpp"
#include "lexcourt/metrics/scores.hpp"

namespace lexcourt::metrics {

// A system's answer for one case, reduced to what the metrics compare.
struct Prediction {
  std::string case_id;
  std::set<std::string> articles;
  std::optional<CriminalFields> criminal;
  std::optional<std::vector<std::string>> civil_results;
  std::optional<std::string> civil_text;  // free text still to be summarized
};

// A structured judgment. Zero term or fine means none was imposed.
Prediction prediction_from_judgment(const adjudicator::Judgment& j);

// Free-text judgment from an external system: articles and criminal fields
// by regular expression, civil results left for summarization.
Prediction prediction_from_text(const std::string& case_id, const std::string& text, CaseCategory category,
                                const corpus::ArticleStore& articles);

struct ReportOptions {
  MatchTolerance tolerance;
};

struct CaseCivil {
  std::string case_id;
  CivilMatchResult match;
};

struct CaseCriminal {
  std::string case_id;
  CriminalMatch match;
};

struct MetricsReport {
  ArticleMetrics articles;
  CriminalEval criminal;
  std::vector<CaseCriminal> criminal_per_case;
  double civil_accuracy = 0.0;  // mean of per-case accuracies
  std::vector<CaseCivil> civil_per_case;
  std::vector<std::string> warnings;
  ReportOptions options;

  nlohmann::json to_json() const;
  // Aggregate table followed by one row per case.
  std::string to_text() const;
};

// References are the cases with their gold articles and, when present,
// gold judgment text. Case ids of both sides must agree exactly
// (KeyMismatchError listing the stray ids). Civil outcomes need `gw` for
// summarization and matching; without it they are skipped with a warning.
MetricsReport build_report(const std::vector<Prediction>& predictions, const std::vector<LegalCase>& references,
                           gateway::Gateway* gw, const ReportOptions& options = {});

}  // namespace lexcourt::metrics
