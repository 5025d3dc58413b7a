#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/courtroom/transcript.hpp"
#include "lexcourt/evolution/refine.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/retrieval/case_retriever.hpp"

namespace lexcourt::courtroom {

inline constexpr const char* kTaskArgue = "turn.argue";

struct CourtroomOptions {
  int rounds = 3;
  std::size_t top_articles = 5;        // retrieved articles shown to lawyers
  std::size_t context_chars = 6000;    // code-point budget for retrieved material
};

// Renders the retrieved material a lawyer sees: the top articles then the
// precedent, most relevant first, cut off at `budget` code points.
std::string lawyer_context(const retrieval::RetrievalBundle& bundle, std::size_t top_articles, std::size_t budget);

std::string case_summary(const LegalCase& c);

// Drives the argumentation protocol for one case at a time:
// turn 0 complaint (plaintiff), turn 1 defense (defendant), then for each
// round 1..rounds a plaintiff turn and a defendant turn. Every turn after
// the complaint is generated with the opponent's latest finalized text in
// its prompt.
class Courtroom {
 public:
  Courtroom(gateway::Gateway& plaintiff, gateway::Gateway& defendant, retrieval::CaseRetriever& retriever,
            CourtroomOptions options = {});

  // Generates the two opening turns, each without refinement.
  Transcript open_proceedings(const LegalCase& c);

  // Requires exactly 2 * round_number finalized turns (TrialOrderError otherwise).
  void run_round(Transcript& transcript, const LegalCase& c, int round_number);

  // Complete trial with every turn passed through `evolver` (nullptr: no
  // refinement). Resumes from `resume` when given. On any failure the
  // partial transcript is handed to `persist` (status in_progress) before
  // the error propagates; after each finalized turn `persist` sees progress.
  Transcript run_full_trial(const LegalCase& c, evolution::Evolver* evolver,
                            std::optional<Transcript> resume = std::nullopt,
                            const std::function<void(const Transcript&)>& persist = {});

  // Prompt for the next turn of `transcript`.
  gateway::ChatRequest turn_request(const LegalCase& c, const Transcript& transcript,
                                    const retrieval::RetrievalBundle& bundle) const;

  const CourtroomOptions& options() const noexcept { return options_; }

 private:
  void advance(Transcript& transcript, const LegalCase& c, evolution::Evolver* evolver);
  retrieval::RetrievalBundle& bundle_for(const LegalCase& c);

  gateway::Gateway& plaintiff_;
  gateway::Gateway& defendant_;
  retrieval::CaseRetriever& retriever_;
  CourtroomOptions options_;
  std::string bundle_case_;
  retrieval::RetrievalBundle bundle_;
};

}  // namespace lexcourt::courtroom
