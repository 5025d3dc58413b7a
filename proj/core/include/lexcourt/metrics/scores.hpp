#pragma once

#include <set>
#include <string>
#include <vector>

#include "lexcourt/metrics/extract.hpp"

namespace lexcourt::metrics {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

// Per-case set overlap. Empty gold is a PreconditionError; an empty
// prediction has precision 0.
Prf article_prf(const std::set<std::string>& predicted, const std::set<std::string>& gold);

struct CasePrf {
  std::string case_id;
  Prf prf;
};

// Macro averages: every aggregate is the unweighted mean of the per-case
// values (per-case F1 first, then the mean).
struct ArticleMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<CasePrf> per_case;
};

ArticleMetrics aggregate_articles(std::vector<CasePrf> per_case);

struct CriminalEval {
  double charge_accuracy = 0.0;
  double term_accuracy = 0.0;
  double fine_accuracy = 0.0;
  std::size_t n_cases = 0;
};

struct MatchTolerance {
  int term_months = 0;
  double fine_amount = 0.0;
};

// Whitespace removed, full-width ASCII folded, 罪 / 犯 stripped at the edges.
std::string normalize_charge(const std::string& charge);

struct CriminalMatch {
  bool charge = false;
  bool term = false;
  bool fine = false;
};

// A field absent on one side only never matches; absent on both sides does.
CriminalMatch match_criminal(const CriminalFields& predicted, const CriminalFields& reference,
                             const MatchTolerance& tolerance = {});

// Accuracy = correct / cases for each field. Lists must be aligned.
CriminalEval criminal_accuracy(const std::vector<CriminalFields>& predictions,
                               const std::vector<CriminalFields>& references, const MatchTolerance& tolerance = {});

}  // namespace lexcourt::metrics
