#include "lexcourt/corpus/types.hpp"

#include <fstream>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/jsonl.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::corpus {

namespace {

using nlohmann::json;

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw MalformedInputError((line ? "line " + std::to_string(line) + ": " : std::string()) + what, line);
}

std::string require_string(const json& j, const char* key, std::size_t line, bool non_empty = true) {
  if (!j.is_object()) bad(line, "record is not an object");
  auto it = j.find(key);
  if (it == j.end()) bad(line, std::string("missing field '") + key + "'");
  if (!it->is_string()) bad(line, std::string("field '") + key + "' must be a string");
  auto s = it->get<std::string>();
  if (non_empty && utf8::trim(s).empty()) bad(line, std::string("field '") + key + "' is empty");
  return s;
}

}  // namespace

std::string to_string(ArticleCategory c) {
  return c == ArticleCategory::criminal ? "criminal" : "civil_admin";
}

std::string to_string(Stage s) {
  return s == Stage::first_instance ? "first_instance" : "second_instance";
}

json LawArticle::to_json() const {
  return {{"article_id", article_id},
          {"statute_name", statute_name},
          {"article_number", article_number},
          {"body", body},
          {"category", to_string(category)}};
}

LawArticle LawArticle::from_json(const json& j, std::size_t line) {
  LawArticle a;
  a.article_id = require_string(j, "article_id", line);
  a.statute_name = require_string(j, "statute_name", line);
  a.body = require_string(j, "body", line);
  const auto cat = require_string(j, "category", line);
  if (cat == "criminal") a.category = ArticleCategory::criminal;
  else if (cat == "civil_admin" || cat == "civil" || cat == "administrative") a.category = ArticleCategory::civil_admin;
  else bad(line, "unknown category '" + cat + "'");
  auto it = j.find("article_number");
  if (it == j.end() || !it->is_number_integer()) bad(line, "field 'article_number' must be an integer");
  a.article_number = it->get<int>();
  if (a.article_number <= 0) bad(line, "field 'article_number' must be positive");
  return a;
}

json CorpusCase::to_json() const {
  return {{"case_id", case_id},       {"case_name", case_name},
          {"action_cause", action_cause}, {"stage", to_string(stage)},
          {"relevant_articles", relevant_articles}, {"full_text", full_text}};
}

CorpusCase CorpusCase::from_json(const json& j, std::size_t line) {
  CorpusCase c;
  c.case_id = require_string(j, "case_id", line);
  c.case_name = require_string(j, "case_name", line);
  c.action_cause = require_string(j, "action_cause", line);
  c.full_text = require_string(j, "full_text", line);
  const auto stage = require_string(j, "stage", line);
  if (stage == "first_instance") c.stage = Stage::first_instance;
  else if (stage == "second_instance") c.stage = Stage::second_instance;
  else bad(line, "unknown stage '" + stage + "'");
  auto it = j.find("relevant_articles");
  if (it == j.end() || !it->is_array()) bad(line, "field 'relevant_articles' must be an array");
  for (const auto& a : *it) {
    if (!a.is_string()) bad(line, "relevant_articles entries must be strings");
    c.relevant_articles.push_back(a.get<std::string>());
  }
  return c;
}

RedactionRule::RedactionRule(std::string pattern, std::string replacement)
    : pattern_(std::move(pattern)), replacement_(std::move(replacement)) {
  if (pattern_.empty()) throw PreconditionError("redaction pattern is empty");
  try {
    regex_ = std::wregex(utf8::to_wide(pattern_), std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw PreconditionError("redaction pattern '" + pattern_ + "' does not compile: " + e.what());
  }
  const auto groups = regex_.mark_count();
  for (std::size_t i = 0; i + 1 < replacement_.size(); ++i) {
    if (replacement_[i] != '$') continue;
    const char next = replacement_[i + 1];
    if (next == '$') {
      ++i;
      continue;
    }
    if (next >= '0' && next <= '9') {
      std::size_t n = 0, k = i + 1;
      while (k < replacement_.size() && replacement_[k] >= '0' && replacement_[k] <= '9')
        n = n * 10 + static_cast<std::size_t>(replacement_[k++] - '0');
      if (n > groups)
        throw PreconditionError("replacement '" + replacement_ + "' references group $" + std::to_string(n) +
                                " but pattern has " + std::to_string(groups));
    }
  }
  wide_replacement_ = utf8::to_wide(replacement_);
}

std::string RedactionRule::apply(const std::string& text) const {
  return utf8::from_wide(std::regex_replace(utf8::to_wide(text), regex_, wide_replacement_));
}

RedactionRule RedactionRule::from_json(const nlohmann::json& j, std::size_t line) {
  const auto pattern = require_string(j, "pattern", line);
  const auto replacement = require_string(j, "replacement", line, false);
  try {
    return RedactionRule(pattern, replacement);
  } catch (const PreconditionError& e) {
    bad(line, e.what());
  }
}

std::vector<RedactionRule> load_redaction_rules(const std::string& path) {
  std::vector<RedactionRule> rules;
  for (const auto& line : jsonl::read(path)) rules.push_back(RedactionRule::from_json(line.value, line.number));
  return rules;
}

std::string redact(const std::string& text, const std::vector<RedactionRule>& rules) {
  std::string out = text;
  for (const auto& r : rules) out = r.apply(out);
  return out;
}

std::string normalize_statute_name(const std::string& name) {
  static const std::u32string kPrefix = U"中华人民共和国";
  std::u32string cps;
  for (char32_t c : utf8::decode(name)) {
    if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == 0x3000) continue;
    if (c == U'《' || c == U'》') continue;
    cps.push_back(c);
  }
  if (cps.size() > kPrefix.size() && cps.compare(0, kPrefix.size(), kPrefix) == 0) cps.erase(0, kPrefix.size());
  return utf8::encode(cps);
}

}  // namespace lexcourt::corpus
