#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lexcourt/courtroom/transcript.hpp"

namespace lexcourt::evolution {

// Chosen/rejected argument pair for preference optimisation. The prompt is
// the exact generation prompt of the turn.
struct PreferencePair {
  std::string prompt;
  std::string chosen;
  std::string rejected;
  int chosen_score = 0;
  int rejected_score = 0;
  std::string case_id;
  std::size_t turn_index = 0;

  nlohmann::json to_json() const;
  static PreferencePair from_json(const nlohmann::json& j);
};

struct DpoExport {
  std::vector<PreferencePair> pairs;
  std::size_t zero_spread_turns = 0;  // max total == min total
  std::size_t unscored_turns = 0;     // fewer than two scored variants
};

// One pair per turn: highest-total variant vs lowest-total variant (earliest
// wins ties on both ends). Throws PreconditionError for an incomplete
// transcript.
DpoExport emit_dpo_pairs(const courtroom::Transcript& transcript);

// Reads every *.json transcript in `dir` (sorted by file name), skipping
// incomplete ones, and concatenates their pairs.
DpoExport export_dpo_dir(const std::filesystem::path& dir);

}  // namespace lexcourt::evolution
