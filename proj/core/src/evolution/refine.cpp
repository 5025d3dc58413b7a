#include "lexcourt/evolution/refine.hpp"

namespace lexcourt::evolution {

using gateway::Role;

RefineResult refine_turn(ArgumentVariant initial, const Scorer& score, const Reviser& revise, int n_iterations) {
  if (n_iterations < 0) throw PreconditionError("n_iterations must be >= 0");
  RefineResult result;
  result.variants.push_back(std::move(initial));
  if (n_iterations == 0) return result;

  const auto fail = [&](const std::exception& e) -> RefinementError {
    return RefinementError(std::string("refinement failed after ") + std::to_string(result.variants.size()) +
                               " variant(s): " + e.what(),
                           result.variants);
  };
  try {
    for (int i = 1; i <= n_iterations; ++i) {
      auto& current = result.variants.back();
      current.score = score(current);
      auto next = revise(current, *current.score);
      next.score.reset();
      result.variants.push_back(std::move(next));
    }
    result.variants.back().score = score(result.variants.back());
  } catch (const RefinementError&) {
    throw;
  } catch (const std::exception& e) {
    throw fail(e);
  }

  for (std::size_t i = 1; i < result.variants.size(); ++i)
    if (result.variants[i].score->total > result.variants[result.best].score->total) result.best = i;
  return result;
}

gateway::ChatRequest revision_request(const gateway::ChatRequest& generation, const ArgumentVariant& /*current*/,
                                      const std::string& current_output, const ArgumentScore& score) {
  gateway::ChatRequest req = generation;
  req.task = kTaskRevise;
  req.messages.push_back({Role::assistant, current_output});
  req.messages.push_back(
      {Role::user,
       "The presiding judge scored your argument: citation " + std::to_string(score.s1_citation) +
           "/5, refutation " + std::to_string(score.s2_refutation) + "/5, comprehension " +
           std::to_string(score.s3_comprehension) + "/5 (total " + std::to_string(score.total) +
           "/15).\nFeedback: " + score.feedback +
           "\n\nRevise your argument to address the feedback. Keep the same output format, including the final "
           "CITATIONS line."});
  return req;
}

Evolver::Evolver(gateway::Gateway& evaluator, EvolutionOptions options) : evaluator_(evaluator), options_(options) {
  if (options_.refine_iterations < 0) throw PreconditionError("refine_iterations must be >= 0");
}

RefineResult Evolver::refine(const gateway::ChatRequest& generation, ArgumentVariant initial, gateway::Gateway& lawyer,
                             const ScoringContext& ctx,
                             const std::function<ArgumentVariant(const std::string&)>& parse,
                             const std::function<std::string(const ArgumentVariant&)>& render) {
  const Scorer scorer = [&](const ArgumentVariant& v) { return score_turn(v.text, ctx, evaluator_); };
  const Reviser reviser = [&](const ArgumentVariant& v, const ArgumentScore& s) {
    return lawyer.chat_structured(revision_request(generation, v, render(v), s), "turn", parse);
  };
  return refine_turn(std::move(initial), scorer, reviser, options_.refine_iterations);
}

}  // namespace lexcourt::evolution
