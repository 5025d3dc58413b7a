#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexcourt/adjudicator/judgment.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/courtroom/transcript.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/retrieval/case_retriever.hpp"

namespace lexcourt::adjudicator {

inline constexpr const char* kTaskJudge = "judge.render";

struct JudgeOptions {
  std::size_t candidate_articles = 40;  // article bodies shown, best-ranked first
  std::size_t precedent_chars = 4000;   // code points of the precedent text shown
};

// What the judge sees for one case. Either ablation leaves its section out
// of the prompt entirely.
struct JudgeContext {
  LegalCase legal_case;
  bool no_argument = false;
  bool no_retrieval = false;
  std::string transcript_text;  // finalized turns with citation trailers
  std::vector<std::string> cited_articles;  // union of the lawyers' citations, first-seen order
  std::optional<corpus::CorpusCase> precedent;
  std::vector<retrieval::RetrievedArticle> candidate_articles;
};

// `transcript` null: argument ablation. `retriever` null: retrieval
// ablation. A transcript that is present must be complete.
JudgeContext assemble_context(const LegalCase& c, const courtroom::Transcript* transcript,
                              retrieval::CaseRetriever* retriever, const JudgeOptions& options = {});

std::string render_transcript(const courtroom::Transcript& t);

gateway::ChatRequest judgment_request(const gateway::Gateway& gw, const JudgeContext& ctx,
                                      const JudgeOptions& options = {});

struct RenderedJudgment {
  Judgment judgment;
  std::size_t dropped_articles = 0;  // predicted ids absent from the article corpus
};

// Parses a judge reply. Unknown article ids are dropped and counted; no
// known article left, a missing section or a category mismatch is a
// ParseFailure.
RenderedJudgment parse_judgment(const std::string& reply, const LegalCase& c, const corpus::ArticleStore& articles);

// One structured judge call; unusable replies end in FormatError("judgment").
RenderedJudgment render_judgment(const JudgeContext& ctx, gateway::Gateway& gw, const corpus::ArticleStore& articles,
                                 const JudgeOptions& options = {});

}  // namespace lexcourt::adjudicator
