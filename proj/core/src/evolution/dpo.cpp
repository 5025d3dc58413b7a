#include "lexcourt/evolution/dpo.hpp"

#include <algorithm>

#include "lexcourt/errors.hpp"

namespace lexcourt::evolution {

nlohmann::json PreferencePair::to_json() const {
  return {{"prompt", prompt},
          {"chosen", chosen},
          {"rejected", rejected},
          {"chosen_score", chosen_score},
          {"rejected_score", rejected_score},
          {"case_id", case_id},
          {"turn_index", turn_index}};
}

PreferencePair PreferencePair::from_json(const nlohmann::json& j) {
  PreferencePair p;
  p.prompt = j.at("prompt").get<std::string>();
  p.chosen = j.at("chosen").get<std::string>();
  p.rejected = j.at("rejected").get<std::string>();
  p.chosen_score = j.at("chosen_score").get<int>();
  p.rejected_score = j.at("rejected_score").get<int>();
  p.case_id = j.at("case_id").get<std::string>();
  p.turn_index = j.at("turn_index").get<std::size_t>();
  return p;
}

DpoExport emit_dpo_pairs(const courtroom::Transcript& transcript) {
  if (!transcript.complete())
    throw PreconditionError("transcript " + transcript.case_id + " is not complete");
  DpoExport out;
  for (const auto& turn : transcript.turns) {
    std::vector<const ArgumentVariant*> scored;
    for (const auto& v : turn.variants)
      if (v.score) scored.push_back(&v);
    if (scored.size() < 2) {
      ++out.unscored_turns;
      continue;
    }
    const ArgumentVariant* hi = scored.front();
    const ArgumentVariant* lo = scored.front();
    for (const auto* v : scored) {
      if (v->score->total > hi->score->total) hi = v;
      if (v->score->total < lo->score->total) lo = v;
    }
    if (hi->score->total == lo->score->total) {
      ++out.zero_spread_turns;
      continue;
    }
    out.pairs.push_back({turn.prompt,
                         courtroom::render_with_trailer(hi->text, hi->cited_articles, hi->cited_precedents),
                         courtroom::render_with_trailer(lo->text, lo->cited_articles, lo->cited_precedents),
                         hi->score->total, lo->score->total, transcript.case_id, turn.turn_index});
  }
  return out;
}

DpoExport export_dpo_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw PreconditionError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  DpoExport all;
  for (const auto& f : files) {
    const auto t = courtroom::Transcript::load(f);
    if (!t.complete()) continue;
    auto part = emit_dpo_pairs(t);
    all.zero_spread_turns += part.zero_spread_turns;
    all.unscored_turns += part.unscored_turns;
    for (auto& p : part.pairs) all.pairs.push_back(std::move(p));
  }
  return all;
}

}  // namespace lexcourt::evolution
