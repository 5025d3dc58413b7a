#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lexcourt/errors.hpp"
#include "lexcourt/evolution/score.hpp"
#include "lexcourt/gateway/gateway.hpp"

namespace lexcourt::evolution {

struct RefineResult {
  std::size_t best = 0;  // index into variants
  std::vector<ArgumentVariant> variants;

  const ArgumentVariant& best_variant() const { return variants.at(best); }
};

// Scoring or revision failed part-way; carries the variants produced so far.
class RefinementError : public Error {
 public:
  RefinementError(const std::string& what, std::vector<ArgumentVariant> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<ArgumentVariant>& partial() const noexcept { return partial_; }

 private:
  std::vector<ArgumentVariant> partial_;
};

using Scorer = std::function<ArgumentScore(const ArgumentVariant&)>;
using Reviser = std::function<ArgumentVariant(const ArgumentVariant& current, const ArgumentScore& score)>;

// Evaluate-feedback-refine loop. For i = 1..n: score v(i-1), revise it into
// v(i). The last revision is scored too, so n >= 1 makes n + 1 scorings over
// n + 1 variants. The best variant has the highest total, earliest on ties.
// n = 0 returns the initial text alone, unscored.
RefineResult refine_turn(ArgumentVariant initial, const Scorer& score, const Reviser& revise, int n_iterations);

// Builds the lawyer's revision request: the original generation exchange,
// then the evaluator's scores and feedback with an instruction to improve.
gateway::ChatRequest revision_request(const gateway::ChatRequest& generation, const ArgumentVariant& current,
                                      const std::string& current_output, const ArgumentScore& score);

struct EvolutionOptions {
  int refine_iterations = 3;
};

// Binds the evaluator gateway and iteration count; the courtroom hands each
// freshly generated turn to refine().
class Evolver {
 public:
  Evolver(gateway::Gateway& evaluator, EvolutionOptions options = {});

  // `parse` turns a lawyer reply into a variant (body + citations);
  // `render` turns a variant back into the full expected output.
  RefineResult refine(const gateway::ChatRequest& generation, ArgumentVariant initial, gateway::Gateway& lawyer,
                      const ScoringContext& ctx,
                      const std::function<ArgumentVariant(const std::string&)>& parse,
                      const std::function<std::string(const ArgumentVariant&)>& render);

  const EvolutionOptions& options() const noexcept { return options_; }
  gateway::Gateway& evaluator() noexcept { return evaluator_; }

 private:
  gateway::Gateway& evaluator_;
  EvolutionOptions options_;
};

}  // namespace lexcourt::evolution
