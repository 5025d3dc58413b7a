#pragma once

#include <string>
#include <vector>

#include "lexcourt/gateway/gateway.hpp"

namespace lexcourt::metrics {

inline constexpr const char* kTaskSummarize = "civil.summarize";
inline constexpr const char* kTaskMatch = "civil.match";

// Placeholder substituted with the material in both templates.
inline constexpr const char* kRawResultsToken = "<RAW-RELUSTS>";

// Organizes a free-text judgment into numbered results.
extern const char* const kSummarizeTemplate;
// Marks each reference result as matched (1) or not (0) by the candidates.
extern const char* const kMatchTemplate;

// {"Result 1": "...", "Result 2": "..."} in index order.
std::string render_result_list(const std::vector<std::string>& results);

std::string summarize_prompt(const std::string& raw_text);
std::string match_prompt(const std::vector<std::string>& reference, const std::vector<std::string>& candidate);

// First {...} object of a reply whose keys are "Result 1".."Result n",
// contiguous from 1. Keys may be unquoted (`{Result 1: 0}`). Values are
// returned in index order. ParseFailure otherwise.
std::vector<nlohmann::json> parse_result_object(const std::string& reply);

// Litigation-cost clauses are not judgment results.
bool is_cost_clause(const std::string& result);

// Unusable replies end in FormatError("civil-summary").
std::vector<std::string> summarize_civil(const std::string& text, gateway::Gateway& gw);

struct CivilMatchResult {
  std::vector<int> matches;  // per reference result, in order

  double accuracy() const noexcept;
};

// Reply keys must be exactly the reference indices; otherwise
// FormatError("civil-match").
CivilMatchResult match_civil(const std::vector<std::string>& reference, const std::vector<std::string>& candidate,
                             gateway::Gateway& gw);

}  // namespace lexcourt::metrics
