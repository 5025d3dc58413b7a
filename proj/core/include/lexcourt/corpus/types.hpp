#pragma once

#include <nlohmann/json.hpp>

#include <regex>
#include <string>
#include <vector>

namespace lexcourt::corpus {

enum class ArticleCategory { criminal, civil_admin };
enum class Stage { first_instance, second_instance };

std::string to_string(ArticleCategory c);
std::string to_string(Stage s);

struct LawArticle {
  std::string article_id;
  std::string statute_name;
  int article_number = 0;
  std::string body;
  ArticleCategory category = ArticleCategory::civil_admin;

  nlohmann::json to_json() const;
  // Throws MalformedInputError (line attached) on any schema violation.
  static LawArticle from_json(const nlohmann::json& j, std::size_t line = 0);
};

struct CorpusCase {
  std::string case_id;
  std::string case_name;
  std::string action_cause;
  Stage stage = Stage::first_instance;
  std::vector<std::string> relevant_articles;
  std::string full_text;

  nlohmann::json to_json() const;
  static CorpusCase from_json(const nlohmann::json& j, std::size_t line = 0);
};

// Operator-supplied anonymization rule. The pattern is an ECMAScript regex
// matched over code points, so CJK character classes behave as expected.
class RedactionRule {
 public:
  // Throws PreconditionError if the pattern does not compile or the
  // replacement references a capture group the pattern lacks.
  RedactionRule(std::string pattern, std::string replacement);

  std::string apply(const std::string& text) const;

  const std::string& pattern() const noexcept { return pattern_; }
  const std::string& replacement() const noexcept { return replacement_; }

  static RedactionRule from_json(const nlohmann::json& j, std::size_t line = 0);

 private:
  std::string pattern_;
  std::string replacement_;
  std::wregex regex_;
  std::wstring wide_replacement_;
};

std::vector<RedactionRule> load_redaction_rules(const std::string& path);
std::string redact(const std::string& text, const std::vector<RedactionRule>& rules);

// Canonical statute key: whitespace and the 中华人民共和国 prefix removed.
// "中华人民共和国民法典" and "民法典" compare equal.
std::string normalize_statute_name(const std::string& name);

}  // namespace lexcourt::corpus
