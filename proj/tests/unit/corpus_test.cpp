#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/corpus/store.hpp"
#include "test_support.hpp"

using namespace lexcourt;
using namespace lexcourt::corpus;
using lexcourt::testkit::TempDir;
using lexcourt::testkit::write_file;

namespace {

std::string article_line(const std::string& id, int number, const std::string& category = "civil_admin") {
  return R"({"article_id": ")" + id + R"(", "statute_name": "中华人民共和国民法典", "article_number": )" +
         std::to_string(number) + R"(, "body": "条文内容", "category": ")" + category + "\"}\n";
}

std::string case_line(const std::string& id, const std::string& text, bool with_cause = true) {
  std::string s = R"({"case_id": ")" + id + R"(", "case_name": "张三借款案", )";
  if (with_cause) s += R"("action_cause": "民间借贷纠纷", )";
  return s + R"("stage": "first_instance", "relevant_articles": ["a-1"], "full_text": ")" + text + "\"}\n";
}

}  // namespace

TEST(ArticleStore, IngestsValidLines) {
  TempDir dir;
  write_file(dir / "a.jsonl", article_line("a-1", 1) + article_line("a-2", 2) + article_line("a-3", 3));
  ArticleStore store;
  EXPECT_EQ(store.ingest_file(dir / "a.jsonl"), 3u);
  EXPECT_EQ(store.size(), 3u);
  EXPECT_EQ(store.at("a-2").article_number, 2);
  EXPECT_THROW(store.at("zzz"), PreconditionError);
}

TEST(ArticleStore, DuplicateIdCitesLineAndCommitsNothing) {
  TempDir dir;
  write_file(dir / "a.jsonl", article_line("a-1", 1) + article_line("a-1", 2));
  ArticleStore store;
  try {
    store.ingest_file(dir / "a.jsonl");
    FAIL();
  } catch (const ConflictError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_TRUE(store.empty());
}

TEST(ArticleStore, DuplicateAgainstStoredArticleIsAConflict) {
  TempDir dir;
  write_file(dir / "a.jsonl", article_line("a-1", 1));
  write_file(dir / "b.jsonl", article_line("a-2", 2) + article_line("a-1", 3));
  ArticleStore store;
  store.ingest_file(dir / "a.jsonl");
  EXPECT_THROW(store.ingest_file(dir / "b.jsonl"), ConflictError);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_FALSE(store.contains("a-2"));
}

TEST(ArticleStore, EmptyFileIngestsNothing) {
  TempDir dir;
  write_file(dir / "a.jsonl", "");
  ArticleStore store;
  EXPECT_EQ(store.ingest_file(dir / "a.jsonl"), 0u);
  EXPECT_TRUE(store.empty());
}

TEST(ArticleStore, SchemaViolationsNameTheLine) {
  TempDir dir;
  write_file(dir / "a.jsonl", article_line("a-1", 1) + R"({"article_id": "a-2", "statute_name": "x"})" "\n");
  ArticleStore store;
  try {
    store.ingest_file(dir / "a.jsonl");
    FAIL();
  } catch (const MalformedInputError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  write_file(dir / "b.jsonl", article_line("a-1", 1, "tort"));
  EXPECT_THROW(store.ingest_file(dir / "b.jsonl"), MalformedInputError);
  write_file(dir / "c.jsonl", article_line("a-1", 0));
  EXPECT_THROW(store.ingest_file(dir / "c.jsonl"), MalformedInputError);
  write_file(dir / "d.jsonl", "{not json\n");
  EXPECT_THROW(store.ingest_file(dir / "d.jsonl"), MalformedInputError);
  EXPECT_TRUE(store.empty());
}

TEST(ArticleStore, PersistsAcrossOpen) {
  TempDir dir;
  write_file(dir / "a.jsonl", article_line("a-1", 1) + article_line("a-2", 2));
  {
    auto store = ArticleStore::open(dir / "store");
    store.ingest_file(dir / "a.jsonl");
  }
  auto reopened = ArticleStore::open(dir / "store");
  EXPECT_EQ(reopened.size(), 2u);
  EXPECT_EQ(reopened.resolve("民法典", 2), std::optional<std::string>("a-2"));
  EXPECT_EQ(reopened.resolve("中华人民共和国 民法典", 1), std::optional<std::string>("a-1"));
  EXPECT_EQ(reopened.resolve("刑法", 1), std::nullopt);
}

TEST(ArticleStore, SampleIsDeterministicAndBounded) {
  ArticleStore store;
  std::vector<LawArticle> batch;
  for (int i = 0; i < 10; ++i)
    batch.push_back(testkit::article("a-" + std::to_string(i), "民法典", i + 1, "b",
                                     i < 4 ? ArticleCategory::criminal : ArticleCategory::civil_admin));
  store.ingest(batch);

  const auto all = store.sample(10, std::nullopt, 1);
  std::set<std::string> ids;
  for (const auto& a : all) ids.insert(a.article_id);
  EXPECT_EQ(ids.size(), 10u);

  const auto s1 = store.sample(3, std::nullopt, 7);
  const auto s2 = store.sample(3, std::nullopt, 7);
  ASSERT_EQ(s1.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s1[i].article_id, s2[i].article_id);

  for (const auto& a : store.sample(4, ArticleCategory::criminal, 3)) EXPECT_EQ(a.category, ArticleCategory::criminal);
  EXPECT_THROW(store.sample(5, ArticleCategory::criminal, 3), InsufficientCorpusError);
  EXPECT_EQ(store.count(ArticleCategory::civil_admin), 6u);
}

TEST(ArticleStore, SmallCorpusCannotSupplyMore) {
  ArticleStore store;
  store.ingest({testkit::article("a", "民法典", 1, "b"), testkit::article("b", "民法典", 2, "b")});
  EXPECT_THROW(store.sample(3, std::nullopt, 0), InsufficientCorpusError);
}

TEST(Redaction, RuleReplacesTokenBeforeStorage) {
  TempDir dir;
  write_file(dir / "c.jsonl", case_line("p-1", "原告[NAME]诉称被告[NAME]欠款。"));
  CaseStore store;
  std::vector<RedactionRule> rules{RedactionRule(R"(\[NAME\])", "某")};
  EXPECT_EQ(store.ingest_file(dir / "c.jsonl", rules), 1u);
  EXPECT_EQ(store.at("p-1").full_text, "原告某诉称被告某欠款。");
}

TEST(Redaction, NoRulesLeaveTextUnchanged) {
  TempDir dir;
  write_file(dir / "c.jsonl", case_line("p-1", "原告张三诉称。"));
  CaseStore store;
  store.ingest_file(dir / "c.jsonl", {});
  EXPECT_EQ(store.at("p-1").full_text, "原告张三诉称。");
}

TEST(Redaction, CjkClassesAndCaptureGroups) {
  RedactionRule rule("(张|李)[\\u4e00-\\u9fff](?=诉)", "$1某");
  EXPECT_EQ(rule.apply("原告张三诉李四"), "原告张某诉李四");
  EXPECT_EQ(redact("李四诉张三", {rule}), "李某诉张三");
  EXPECT_THROW(RedactionRule("(unclosed", "x"), PreconditionError);
  EXPECT_THROW(RedactionRule("a", "$2"), PreconditionError);
}

TEST(CaseStore, MissingFieldFailsWholeFile) {
  TempDir dir;
  write_file(dir / "c.jsonl", case_line("p-1", "正文") + case_line("p-2", "正文", false));
  CaseStore store;
  try {
    store.ingest_file(dir / "c.jsonl", {});
    FAIL();
  } catch (const MalformedInputError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_TRUE(store.empty());
}

TEST(CaseStore, StrictArticlesRequireResolution) {
  TempDir dir;
  write_file(dir / "c.jsonl", case_line("p-1", "正文"));
  ArticleStore articles;
  CaseStore store;
  EXPECT_THROW(store.ingest_file(dir / "c.jsonl", {}, &articles), MalformedInputError);
  articles.ingest({testkit::article("a-1", "民法典", 1, "b")});
  EXPECT_EQ(store.ingest_file(dir / "c.jsonl", {}, &articles), 1u);
}

TEST(CaseStore, SampleRedactionRulesAnonymizeThePrecedents) {
  const auto rules = load_redaction_rules((testkit::sample_dir() / "redaction_rules.jsonl").string());
  CaseStore store;
  store.ingest_file(testkit::sample_dir() / "precedents.jsonl", rules);
  for (const auto& c : store.all())
    for (const char* name : {"王小明", "李红", "赵刚", "钱伟"}) {
      EXPECT_EQ(c.full_text.find(name), std::string::npos) << c.case_id << " " << name;
      EXPECT_EQ(c.case_name.find(name), std::string::npos) << c.case_id << " " << name;
    }
}

TEST(StatuteNames, NormalizationDropsPrefixAndSpaces) {
  EXPECT_EQ(normalize_statute_name("中华人民共和国民法典"), normalize_statute_name("民法典"));
  EXPECT_EQ(normalize_statute_name(" 中华人民共和国 刑法 "), "刑法");
}

TEST(LegalCase, RoundTripAndValidation) {
  const auto cases = testkit::sample_cases();
  ASSERT_EQ(cases.size(), 3u);
  EXPECT_TRUE(cases[0].is_criminal());
  const auto back = LegalCase::from_json(cases[1].to_json());
  EXPECT_EQ(back.to_json(), cases[1].to_json());
  LegalCase bad = cases[0];
  bad.gold_articles.clear();
  EXPECT_THROW(bad.validate(), PreconditionError);
}
