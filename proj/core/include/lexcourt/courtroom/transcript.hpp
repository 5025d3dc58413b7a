#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "lexcourt/evolution/score.hpp"

namespace lexcourt::courtroom {

enum class Party { plaintiff, defendant };
enum class TrialStatus { in_progress, complete };

std::string to_string(Party p);
std::string to_string(TrialStatus s);

struct ArgumentTurn {
  std::size_t turn_index = 0;
  int round = 0;  // 0 = complaint / defense
  Party role = Party::plaintiff;
  std::string text;
  std::vector<std::string> cited_articles;
  std::vector<std::string> cited_precedents;
  std::vector<evolution::ArgumentVariant> variants;
  // Exact generation prompt of the turn; preference pairs are conditioned on it.
  std::string prompt;

  nlohmann::json to_json() const;
  static ArgumentTurn from_json(const nlohmann::json& j);
};

// Complaint, defense, then `rounds` alternating plaintiff/defendant rounds.
struct Transcript {
  std::string case_id;
  int rounds = 3;
  TrialStatus status = TrialStatus::in_progress;
  std::vector<ArgumentTurn> turns;

  std::size_t expected_turns() const noexcept { return 2 * static_cast<std::size_t>(rounds + 1); }
  bool complete() const noexcept { return status == TrialStatus::complete; }

  nlohmann::json to_json() const;
  static Transcript from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static Transcript load(const std::filesystem::path& path);
};

// Protocol position of a turn: even indices speak for the plaintiff.
inline Party party_of(std::size_t turn_index) { return turn_index % 2 == 0 ? Party::plaintiff : Party::defendant; }
inline int round_of(std::size_t turn_index) { return static_cast<int>(turn_index / 2); }

// "[Turn 2 | plaintiff | round 1]" style heading used in prompts.
std::string turn_heading(const ArgumentTurn& t);

inline constexpr const char* kCitationMarker = "CITATIONS:";

// A turn as the model is asked to emit it: argument body, then a final line
// `CITATIONS: {"articles": [...], "precedents": [...]}`.
std::string render_with_trailer(const std::string& body, const std::vector<std::string>& articles,
                                const std::vector<std::string>& precedents);

// Splits a lawyer reply into body and citation trailer. A missing trailer
// means no citations. An empty body raises TurnGenerationError; a trailer
// that is present but not valid JSON raises ParseFailure.
evolution::ArgumentVariant parse_turn_reply(const std::string& reply);

}  // namespace lexcourt::courtroom
