#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "lexcourt/gateway/gateway.hpp"

namespace lexcourt::evolution {

inline constexpr const char* kTaskScore = "turn.score";
inline constexpr const char* kTaskRevise = "turn.revise";

// Rubric score of one argument: three sub-scores 0-5, total 0-15.
struct ArgumentScore {
  int s1_citation = 0;
  int s2_refutation = 0;
  int s3_comprehension = 0;
  int total = 0;
  std::string feedback;

  // Throws PreconditionError unless every sub-score is in [0,5] and total
  // is their sum.
  static ArgumentScore make(int s1, int s2, int s3, std::string feedback = {});

  nlohmann::json to_json() const;
  static ArgumentScore from_json(const nlohmann::json& j);
};

// One candidate text for a turn. Unscored when refinement is disabled.
struct ArgumentVariant {
  std::string text;
  std::optional<ArgumentScore> score;
  std::vector<std::string> cited_articles;
  std::vector<std::string> cited_precedents;

  nlohmann::json to_json() const;
  static ArgumentVariant from_json(const nlohmann::json& j);
};

// Evaluator instructions: the three-dimension rubric with its score bands.
extern const char* const kRubric;

struct ScoringContext {
  std::string case_summary;   // facts, indictment, plea
  std::string party;          // "plaintiff" | "defendant"
  std::string opponent_text;  // the argument being answered; empty for the complaint
  std::string case_id;
};

gateway::ChatRequest scoring_request(const gateway::Gateway& evaluator, const std::string& turn_text,
                                     const ScoringContext& ctx);

// Parses {"s1":..,"s2":..,"s3":..,"feedback":..}. Sub-scores must be
// integers within [0,5]; anything else is a ParseFailure (never clamped).
ArgumentScore parse_score(const std::string& reply);

// Out-of-range or unparseable replies, after the gateway's re-asks, end in
// FormatError("scoring").
ArgumentScore score_turn(const std::string& turn_text, const ScoringContext& ctx, gateway::Gateway& evaluator);

}  // namespace lexcourt::evolution
