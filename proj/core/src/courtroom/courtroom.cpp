#include "lexcourt/courtroom/courtroom.hpp"

#include "lexcourt/util/utf8.hpp"

namespace lexcourt::courtroom {

using gateway::Role;

namespace {

// Appends `entry` if the budget allows, truncating the entry that crosses
// it. Returns false once the budget is spent.
bool append_within(std::u32string& out, const std::string& entry, std::size_t budget) {
  if (out.size() >= budget) return false;
  auto cps = utf8::decode(entry);
  const auto room = budget - out.size();
  if (cps.size() > room) {
    out.append(cps.begin(), cps.begin() + static_cast<std::ptrdiff_t>(room));
    return false;
  }
  out += cps;
  return true;
}

const char* const kTrailerInstruction =
    "After the argument, end your reply with exactly one final line of the form\n"
    "CITATIONS: {\"articles\": [ids of the legal articles you relied on], \"precedents\": [ids of the precedent "
    "cases you relied on]}\n"
    "using the bracketed ids from the retrieved materials.";

std::string task_for(std::size_t turn_index, int rounds) {
  const auto round = round_of(turn_index);
  if (turn_index == 0)
    return "Draft the plaintiff's complaint. Ground it in the case facts and the relevant legal principles, and "
           "set out the claims, their factual basis and the legal reasoning.";
  if (turn_index == 1)
    return "Draft the defense statement. Answer the complaint above point by point, on the facts as well as on "
           "the application of law.";
  std::string task = "Round " + std::to_string(round) + " of " + std::to_string(rounds) +
                     " of the court debate. Your argument must contain:\n"
                     "1. Statement: your standpoint and legal claims.\n";
  if (party_of(turn_index) == Party::plaintiff)
    task += "2. Retort: rebut the defendant's latest argument, exposing logical flaws or misapplied law.\n";
  else
    task += "2. Retort: answer the plaintiff's rebuttals and expose the weaknesses in the plaintiff's case.\n";
  task += "3. Legal Citations: support the claims with legal articles, judicial interpretations and precedents.";
  return task;
}

}  // namespace

std::string case_summary(const LegalCase& c) {
  return "Case facts:\n" + c.facts + "\n\nIndictment:\n" + c.indictment + "\n\nPlea:\n" + c.plea;
}

std::string lawyer_context(const retrieval::RetrievalBundle& bundle, std::size_t top_articles, std::size_t budget) {
  std::u32string out;
  bool room = true;
  for (std::size_t i = 0; room && i < bundle.articles.size() && i < top_articles; ++i) {
    const auto& a = bundle.articles[i];
    room = append_within(out, "[" + a.article_id + "] " + a.text + "\n", budget);
  }
  if (room && bundle.precedent) {
    const auto& p = *bundle.precedent;
    append_within(out, "[" + p.case_id + "] Precedent: " + p.case_name + " (" + p.action_cause + ")\n" + p.full_text + "\n",
                  budget);
  }
  return utf8::encode(out);
}

Courtroom::Courtroom(gateway::Gateway& plaintiff, gateway::Gateway& defendant, retrieval::CaseRetriever& retriever,
                     CourtroomOptions options)
    : plaintiff_(plaintiff), defendant_(defendant), retriever_(retriever), options_(options) {
  if (options_.rounds < 1) throw PreconditionError("a trial needs at least one round");
}

retrieval::RetrievalBundle& Courtroom::bundle_for(const LegalCase& c) {
  if (bundle_case_ != c.case_id) {
    bundle_ = retriever_.retrieve(c);
    bundle_case_ = c.case_id;
  }
  return bundle_;
}

gateway::ChatRequest Courtroom::turn_request(const LegalCase& c, const Transcript& transcript,
                                             const retrieval::RetrievalBundle& bundle) const {
  const auto index = transcript.turns.size();
  const auto party = party_of(index);
  auto& gw = party == Party::plaintiff ? plaintiff_ : defendant_;

  std::string user = "Case facts:\n" + c.facts + "\n\n";
  user += party == Party::plaintiff ? "Indictment (your client's claims):\n" + c.indictment
                                    : "Plea (your client's position):\n" + c.plea;
  user += "\n\n";
  const auto context = lawyer_context(bundle, options_.top_articles, options_.context_chars);
  if (!context.empty()) user += "Retrieved legal materials:\n" + context + "\n";
  if (!transcript.turns.empty()) {
    user += "Proceedings so far:\n";
    for (const auto& t : transcript.turns) user += turn_heading(t) + "\n" + t.text + "\n\n";
  }
  user += task_for(index, transcript.rounds) + "\n\n" + kTrailerInstruction;

  const std::string system = party == Party::plaintiff
                                 ? "You are the plaintiff's lawyer in a Chinese court. Argue for your client."
                                 : "You are the defendant's lawyer in a Chinese court. Argue for your client.";
  auto req = gw.request({{Role::system, system}, {Role::user, std::move(user)}}, kTaskArgue);
  req.attributes["party"] = to_string(party);
  req.attributes["round"] = std::to_string(round_of(index));
  req.attributes["turn_index"] = std::to_string(index);
  req.attributes["case_id"] = c.case_id;
  std::string shown;
  for (std::size_t i = 0; i < bundle.articles.size() && i < options_.top_articles; ++i)
    shown += (shown.empty() ? "" : ",") + bundle.articles[i].article_id;
  req.attributes["context_articles"] = shown;
  req.attributes["context_precedent"] = bundle.precedent ? bundle.precedent->case_id : "";
  return req;
}

void Courtroom::advance(Transcript& transcript, const LegalCase& c, evolution::Evolver* evolver) {
  const auto index = transcript.turns.size();
  if (index >= transcript.expected_turns()) throw TrialOrderError("transcript " + c.case_id + " is already complete");
  const auto party = party_of(index);
  auto& gw = party == Party::plaintiff ? plaintiff_ : defendant_;
  const auto req = turn_request(c, transcript, bundle_for(c));

  const std::function<evolution::ArgumentVariant(const std::string&)> parse = parse_turn_reply;
  auto initial = gw.chat_structured(req, "turn", parse);

  ArgumentTurn turn;
  turn.turn_index = index;
  turn.round = round_of(index);
  turn.role = party;
  turn.prompt = gateway::render_prompt(req);
  if (evolver) {
    evolution::ScoringContext ctx{case_summary(c), to_string(party),
                                  transcript.turns.empty() ? std::string() : transcript.turns.back().text, c.case_id};
    const auto render = [](const evolution::ArgumentVariant& v) {
      return render_with_trailer(v.text, v.cited_articles, v.cited_precedents);
    };
    auto result = evolver->refine(req, std::move(initial), gw, ctx, parse, render);
    turn.variants = std::move(result.variants);
    const auto& best = turn.variants[result.best];
    turn.text = best.text;
    turn.cited_articles = best.cited_articles;
    turn.cited_precedents = best.cited_precedents;
  } else {
    turn.text = initial.text;
    turn.cited_articles = initial.cited_articles;
    turn.cited_precedents = initial.cited_precedents;
    turn.variants.push_back(std::move(initial));
  }
  transcript.turns.push_back(std::move(turn));
  if (transcript.turns.size() == transcript.expected_turns()) transcript.status = TrialStatus::complete;
}

Transcript Courtroom::open_proceedings(const LegalCase& c) {
  c.validate();
  Transcript t;
  t.case_id = c.case_id;
  t.rounds = options_.rounds;
  Transcript work = t;
  advance(work, c, nullptr);
  advance(work, c, nullptr);
  return work;
}

void Courtroom::run_round(Transcript& transcript, const LegalCase& c, int round_number) {
  if (round_number < 1 || round_number > transcript.rounds)
    throw TrialOrderError("round " + std::to_string(round_number) + " is outside 1.." +
                          std::to_string(transcript.rounds));
  const auto want = 2 * static_cast<std::size_t>(round_number);
  if (transcript.turns.size() != want)
    throw TrialOrderError("round " + std::to_string(round_number) + " needs " + std::to_string(want) +
                          " prior turns, transcript has " + std::to_string(transcript.turns.size()));
  Transcript work = transcript;
  advance(work, c, nullptr);
  advance(work, c, nullptr);
  transcript = std::move(work);
}

Transcript Courtroom::run_full_trial(const LegalCase& c, evolution::Evolver* evolver, std::optional<Transcript> resume,
                                     const std::function<void(const Transcript&)>& persist) {
  c.validate();
  Transcript t;
  if (resume) {
    if (resume->case_id != c.case_id)
      throw PreconditionError("resume transcript belongs to " + resume->case_id + ", not " + c.case_id);
    t = std::move(*resume);
    if (t.rounds != options_.rounds)
      throw PreconditionError("resume transcript was run with " + std::to_string(t.rounds) + " rounds");
  } else {
    t.case_id = c.case_id;
    t.rounds = options_.rounds;
  }
  while (t.turns.size() < t.expected_turns()) {
    try {
      advance(t, c, evolver);
    } catch (...) {
      t.status = TrialStatus::in_progress;
      if (persist) persist(t);
      throw;
    }
    if (persist && !t.complete()) persist(t);
  }
  t.status = TrialStatus::complete;
  if (persist) persist(t);
  return t;
}

}  // namespace lexcourt::courtroom
