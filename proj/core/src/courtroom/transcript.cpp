#include "lexcourt/courtroom/transcript.hpp"

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::courtroom {

using nlohmann::json;

std::string to_string(Party p) { return p == Party::plaintiff ? "plaintiff" : "defendant"; }
std::string to_string(TrialStatus s) { return s == TrialStatus::complete ? "complete" : "in_progress"; }

std::string turn_heading(const ArgumentTurn& t) {
  std::string kind;
  if (t.round == 0) kind = t.role == Party::plaintiff ? "complaint" : "defense";
  else kind = "round " + std::to_string(t.round);
  return "[Turn " + std::to_string(t.turn_index) + " | " + to_string(t.role) + " | " + kind + "]";
}

json ArgumentTurn::to_json() const {
  json vs = json::array();
  for (const auto& v : variants) vs.push_back(v.to_json());
  return {{"turn_index", turn_index},
          {"round", round},
          {"role", to_string(role)},
          {"text", text},
          {"cited_articles", cited_articles},
          {"cited_precedents", cited_precedents},
          {"variants", std::move(vs)},
          {"prompt", prompt}};
}

ArgumentTurn ArgumentTurn::from_json(const json& j) {
  ArgumentTurn t;
  t.turn_index = j.at("turn_index").get<std::size_t>();
  t.round = j.at("round").get<int>();
  const auto role = j.at("role").get<std::string>();
  if (role != "plaintiff" && role != "defendant") throw PreconditionError("unknown turn role '" + role + "'");
  t.role = role == "plaintiff" ? Party::plaintiff : Party::defendant;
  t.text = j.at("text").get<std::string>();
  t.cited_articles = j.value("cited_articles", std::vector<std::string>{});
  t.cited_precedents = j.value("cited_precedents", std::vector<std::string>{});
  for (const auto& v : j.value("variants", json::array())) t.variants.push_back(evolution::ArgumentVariant::from_json(v));
  t.prompt = j.value("prompt", "");
  return t;
}

json Transcript::to_json() const {
  json ts = json::array();
  for (const auto& t : turns) ts.push_back(t.to_json());
  return {{"case_id", case_id}, {"rounds", rounds}, {"status", to_string(status)}, {"turns", std::move(ts)}};
}

Transcript Transcript::from_json(const json& j) {
  Transcript t;
  t.case_id = j.at("case_id").get<std::string>();
  t.rounds = j.value("rounds", 3);
  t.status = j.at("status").get<std::string>() == "complete" ? TrialStatus::complete : TrialStatus::in_progress;
  for (const auto& turn : j.at("turns")) t.turns.push_back(ArgumentTurn::from_json(turn));
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (t.turns[i].turn_index != i || t.turns[i].role != party_of(i))
      throw PreconditionError("transcript " + t.case_id + ": turn " + std::to_string(i) + " is out of protocol order");
  }
  if (t.complete() && t.turns.size() != t.expected_turns())
    throw PreconditionError("transcript " + t.case_id + " is marked complete with the wrong number of turns");
  return t;
}

void Transcript::save(const std::filesystem::path& path) const {
  jsonl::write_text_atomic(path, to_json().dump(2) + "\n");
}

Transcript Transcript::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(jsonl::read_text(path)));
  } catch (const json::exception& e) {
    throw MalformedInputError(path.string() + ": " + e.what());
  }
}

std::string render_with_trailer(const std::string& body, const std::vector<std::string>& articles,
                                const std::vector<std::string>& precedents) {
  const json trailer = {{"articles", articles}, {"precedents", precedents}};
  return body + "\n" + kCitationMarker + " " + trailer.dump();
}

evolution::ArgumentVariant parse_turn_reply(const std::string& reply) {
  evolution::ArgumentVariant v;
  const auto pos = reply.rfind(kCitationMarker);
  std::string body = pos == std::string::npos ? reply : reply.substr(0, pos);
  v.text = utf8::trim(body);
  if (v.text.empty()) throw TurnGenerationError("lawyer returned an empty argument");
  if (pos == std::string::npos) return v;

  const auto trailer_text = reply.substr(pos + std::string(kCitationMarker).size());
  json trailer;
  try {
    trailer = json::parse(utf8::trim(trailer_text));
  } catch (const json::parse_error&) {
    throw ParseFailure("citation trailer is not a JSON object");
  }
  if (!trailer.is_object()) throw ParseFailure("citation trailer is not a JSON object");
  for (auto [key, out] : {std::pair{"articles", &v.cited_articles}, std::pair{"precedents", &v.cited_precedents}}) {
    if (!trailer.contains(key)) continue;
    if (!trailer[key].is_array()) throw ParseFailure(std::string("citation trailer '") + key + "' is not a list");
    for (const auto& id : trailer[key]) {
      if (!id.is_string()) throw ParseFailure("citation ids must be strings");
      out->push_back(id.get<std::string>());
    }
  }
  return v;
}

}  // namespace lexcourt::courtroom
