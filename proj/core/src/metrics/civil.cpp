#include "lexcourt/metrics/civil.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "lexcourt/util/utf8.hpp"

namespace lexcourt::metrics {

using gateway::ResponseFormat;
using gateway::Role;
using nlohmann::json;

const char* const kSummarizeTemplate =
    "Please organize the given text into the required format.\n"
    "Example 1: Current text: The judgment is as follows: Defendant should return the loan of 200000 yuan to "
    "Plaintiff; Defendant shall pay interest during the period of fund occupation at an annual rate of 6% from "
    "December 20, 2021 to October 19, 2023; The defendant shall bear all the litigation costs of this case. The "
    "above is the final judgment of this court. The defendant is requested to fulfill the repayment obligation "
    "within the time limit given in the judgment and pay interest and litigation costs in accordance with the "
    "law.\n"
    "Output list: {\"Result 1\": \"The defendant should return the loan of 200000 yuan to the plaintiff\", "
    "\"Result 2\": \"The defendant  should pay interest on the funds during the occupation period at an annual "
    "interest rate of 6% from December 20, 2021 to October 19, 2023\"}\n"
    "Please organize the following content:\n"
    "Current text:<RAW-RELUSTS>\n"
    "Output List:";

const char* const kMatchTemplate =
    "Please compare the candidate's answer with the reference answer to determine if the answer is correct. No "
    "explanation is needed, and the result can be directly output in JSON structure\n"
    "Example 1:\n"
    "Current text: Reference answers: {\"Result 1\": \"The defendant should return the loan of 200000 yuan to the "
    "plaintiff\", \"Result 2\": \"The defendant should pay interest on the capital occupation period at an annual "
    "interest rate of 6% from December 20, 2021 to October 19, 2023\"}\n"
    "Candidate answers: {\"Result 1\": \"The defendant should pay interest on the capital occupation period at an "
    "annual interest rate of 6% from December 20, 2021 to October 19, 2023\", \"Result 2\": \"The defendant should "
    "return the loan of 10000 yuan to the plaintiff\"}\n"
    "Output list: {Result 1: 0, Result 2: 1}\n"
    "Please organize the following content and output it in JSON structure:\n"
    "Current text:<RAW-RELUSTS>\n"
    "Output list: {\"Result 1\":<>, \"Result 2\":<>,...}";

namespace {

std::string substitute(std::string tmpl, const std::string& material) {
  const std::string token = kRawResultsToken;
  tmpl.replace(tmpl.find(token), token.size(), material);
  return tmpl;
}

// Position just past the '}' matching the '{' at `open`, honouring strings.
std::size_t matching_brace(const std::string& s, std::size_t open) {
  int depth = 0;
  bool in_string = false, escaped = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i + 1;
  }
  return std::string::npos;
}

gateway::ChatRequest single_prompt(const gateway::Gateway& gw, std::string prompt, const char* task) {
  auto req = gw.request({{Role::user, std::move(prompt)}}, task, ResponseFormat::structured_object);
  req.temperature = 0.0;
  return req;
}

}  // namespace

std::string render_result_list(const std::vector<std::string>& results) {
  std::string out = "{";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i) out += ", ";
    out += "\"Result " + std::to_string(i + 1) + "\": " + json(results[i]).dump();
  }
  return out + "}";
}

std::string summarize_prompt(const std::string& raw_text) { return substitute(kSummarizeTemplate, raw_text); }

std::string match_prompt(const std::vector<std::string>& reference, const std::vector<std::string>& candidate) {
  return substitute(kMatchTemplate, "Reference answers: " + render_result_list(reference) +
                                        "\nCandidate answers: " + render_result_list(candidate));
}

std::vector<json> parse_result_object(const std::string& reply) {
  const auto open = reply.find('{');
  if (open == std::string::npos) throw ParseFailure("reply holds no result object");
  const auto close = matching_brace(reply, open);
  if (close == std::string::npos) throw ParseFailure("result object is not closed");
  const auto raw = reply.substr(open, close - open);
  json obj = json::parse(raw, nullptr, false);
  if (obj.is_discarded()) {
    static const std::regex bare_key(R"(([{,]\s*)(Result\s*\d+)\s*:)");
    obj = json::parse(std::regex_replace(raw, bare_key, "$1\"$2\":"), nullptr, false);
    if (obj.is_discarded()) throw ParseFailure("result object is not valid JSON");
  }
  if (!obj.is_object() || obj.empty()) throw ParseFailure("result object is empty");

  static const std::regex key_re(R"(Result\s*(\d+))");
  std::map<int, json> by_index;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    std::smatch m;
    if (!std::regex_match(it.key(), m, key_re)) throw ParseFailure("unexpected result key '" + it.key() + "'");
    by_index[std::stoi(m[1].str())] = it.value();
  }
  std::vector<json> out;
  int expect = 1;
  for (auto& [index, value] : by_index) {
    if (index != expect++) throw ParseFailure("result keys are not contiguous from 1");
    out.push_back(std::move(value));
  }
  return out;
}

bool is_cost_clause(const std::string& result) {
  std::string lower = result;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const char* marker : {"litigation cost", "诉讼费", "受理费"})
    if (lower.find(marker) != std::string::npos) return true;
  return false;
}

std::vector<std::string> summarize_civil(const std::string& text, gateway::Gateway& gw) {
  auto req = single_prompt(gw, summarize_prompt(text), kTaskSummarize);
  req.attributes["raw_text"] = text;
  const std::function<std::vector<std::string>(const std::string&)> parse = [](const std::string& reply) {
    std::vector<std::string> results;
    for (const auto& v : parse_result_object(reply)) {
      if (!v.is_string()) throw ParseFailure("result statements must be strings");
      const auto s = utf8::trim(v.get<std::string>());
      if (s.empty()) throw ParseFailure("empty result statement");
      if (!is_cost_clause(s)) results.push_back(s);
    }
    if (results.empty()) throw ParseFailure("no judgment result besides litigation costs");
    return results;
  };
  return gw.chat_structured(req, "civil-summary", parse);
}

double CivilMatchResult::accuracy() const noexcept {
  if (matches.empty()) return 0.0;
  int sum = 0;
  for (int m : matches) sum += m;
  return static_cast<double>(sum) / static_cast<double>(matches.size());
}

CivilMatchResult match_civil(const std::vector<std::string>& reference, const std::vector<std::string>& candidate,
                             gateway::Gateway& gw) {
  if (reference.empty() || candidate.empty()) throw PreconditionError("civil matching needs two non-empty lists");
  auto req = single_prompt(gw, match_prompt(reference, candidate), kTaskMatch);
  req.attributes["reference"] = render_result_list(reference);
  req.attributes["candidate"] = render_result_list(candidate);
  const auto n = reference.size();
  const std::function<CivilMatchResult(const std::string&)> parse = [n](const std::string& reply) {
    const auto values = parse_result_object(reply);
    if (values.size() != n)
      throw ParseFailure("expected " + std::to_string(n) + " result marks, got " + std::to_string(values.size()));
    CivilMatchResult r;
    for (const auto& v : values) {
      int mark = -1;
      if (v.is_number_integer()) mark = v.get<int>();
      else if (v.is_boolean()) mark = v.get<bool>() ? 1 : 0;
      else if (v.is_string() && (v == "0" || v == "1")) mark = v == "1" ? 1 : 0;
      if (mark != 0 && mark != 1) throw ParseFailure("result marks must be 0 or 1");
      r.matches.push_back(mark);
    }
    return r;
  };
  return gw.chat_structured(req, "civil-match", parse);
}

}  // namespace lexcourt::metrics
