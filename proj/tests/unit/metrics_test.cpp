#include <gtest/gtest.h>

#include <fstream>

#include "lexcourt/metrics/civil.hpp"
#include "lexcourt/metrics/extract.hpp"
#include "lexcourt/metrics/numerals.hpp"
#include "lexcourt/metrics/report.hpp"
#include "lexcourt/metrics/scores.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#ifndef LEXCOURT_FIXTURE_DIR
#define LEXCOURT_FIXTURE_DIR "tests/fixtures"
#endif

using namespace lexcourt;
using namespace lexcourt::metrics;
using gateway::MockProvider;
using lexcourt::testkit::GatewayHarness;

namespace {

struct JudgmentFixture {
  std::string id;
  std::string text;
  CriminalFields fields;
  std::set<ArticleRef> articles;
};

std::vector<JudgmentFixture> load_fixtures() {
  std::ifstream in(std::string(LEXCOURT_FIXTURE_DIR) + "/judgments.jsonl");
  std::vector<JudgmentFixture> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    JudgmentFixture f;
    f.id = j.at("id");
    f.text = j.at("text");
    if (!j.at("charge").is_null()) f.fields.charge = j.at("charge").get<std::string>();
    if (!j.at("term_months").is_null()) f.fields.term_months = j.at("term_months").get<int>();
    if (!j.at("fine_amount").is_null()) f.fields.fine_amount = j.at("fine_amount").get<double>();
    for (const auto& a : j.at("articles")) f.articles.emplace(a[0].get<std::string>(), a[1].get<int>());
    out.push_back(std::move(f));
  }
  return out;
}

CasePrf row(const std::string& id, const std::set<std::string>& pred, const std::set<std::string>& gold) {
  return {id, article_prf(pred, gold)};
}

}  // namespace

TEST(Numerals, MatchesTheRenderingOracleForEveryFormUpTo9999) {
  using oracle::NumeralForm;
  for (const auto form : {NumeralForm::standard, NumeralForm::explicit_one, NumeralForm::financial,
                          NumeralForm::positional}) {
    for (int n = 0; n <= 9999; ++n) {
      const auto text = oracle::render_chinese(n, form);
      const auto got = parse_chinese_number(text);
      ASSERT_TRUE(got.has_value()) << text;
      ASSERT_EQ(*got, n) << text;
    }
  }
}

TEST(Numerals, CommonJudgmentSpellings) {
  EXPECT_EQ(parse_chinese_number("两千"), 2000);
  EXPECT_EQ(parse_chinese_number("两百"), 200);
  EXPECT_EQ(parse_chinese_number("零六"), 6);
  EXPECT_EQ(parse_chinese_number("一千零十"), 1010);
  EXPECT_EQ(parse_chinese_number("五百零九"), 509);
  EXPECT_EQ(parse_chinese_number("壹佰万"), 1000000);
  EXPECT_EQ(parse_chinese_number("一百五十万"), 1500000);
  EXPECT_EQ(parse_chinese_number("二十万"), 200000);
  EXPECT_EQ(parse_chinese_number("3万5000"), 35000);
  EXPECT_EQ(parse_chinese_number("２０２４"), 2024);
  EXPECT_EQ(parse_chinese_number("509"), 509);
  EXPECT_FALSE(parse_chinese_number("").has_value());
  EXPECT_FALSE(parse_chinese_number("abc").has_value());
}

TEST(Numerals, Amounts) {
  EXPECT_EQ(parse_amount("5,000"), 5000.0);
  EXPECT_EQ(parse_amount("1.5万"), 15000.0);
  EXPECT_EQ(parse_amount("２００００"), 20000.0);
  EXPECT_EQ(parse_amount("五千"), 5000.0);
}

TEST(ExtractArticles, StatuteCarriesOverToBareCitations) {
  const auto refs = extract_article_refs("依照《中华人民共和国民法典》第五百零九条、第五百七十七条，《刑法》第264条之规定");
  EXPECT_EQ(refs, (std::set<ArticleRef>{{"民法典", 509}, {"民法典", 577}, {"刑法", 264}}));
  EXPECT_TRUE(extract_article_refs("根据第十条之规定").empty());
  EXPECT_EQ(render_article_ref({"民法典", 509}), "《民法典》第509条");
}

TEST(ExtractArticles, ResolvesAgainstTheCorpusOrKeepsAPlaceholder) {
  const auto store = testkit::sample_articles();
  const auto ids = resolve_article_refs({{"刑法", 264}, {"刑法", 9999}}, store);
  EXPECT_EQ(ids, (std::vector<std::string>{"xf-264", "刑法#9999"}));
}

TEST(ExtractCriminal, HandLabelledJudgments) {
  const auto fixtures = load_fixtures();
  ASSERT_EQ(fixtures.size(), 30u);
  for (const auto& f : fixtures) {
    EXPECT_EQ(extract_criminal(f.text), f.fields) << f.id;
    EXPECT_EQ(extract_article_refs(f.text), f.articles) << f.id;
  }
}

TEST(ExtractCriminal, AbsentComponentsStayEmpty) {
  const auto f = extract_criminal("被告人某某犯盗窃罪，免予刑事处罚。");
  EXPECT_EQ(f.charge, "盗窃罪");
  EXPECT_FALSE(f.term_months.has_value());
  EXPECT_FALSE(f.fine_amount.has_value());
}

TEST(ArticlePrf, SetOverlap) {
  const auto p = article_prf({"a", "b", "c"}, {"a", "d"});
  EXPECT_DOUBLE_EQ(p.precision, 1.0 / 3);
  EXPECT_DOUBLE_EQ(p.recall, 0.5);
  EXPECT_DOUBLE_EQ(p.f1, 0.4);
  EXPECT_EQ(article_prf({}, {"a"}).f1, 0.0);
  EXPECT_THROW(article_prf({"a"}, {}), PreconditionError);
  EXPECT_NEAR(f1_score(0.271, 0.223), 0.24467, 1e-5);
  EXPECT_EQ(f1_score(0, 0), 0.0);
}

TEST(ArticlePrf, MacroAverageMatchesTheSpreadsheet) {
  // Ten cases with hand-picked overlaps; the oracle averages per-case rows.
  const std::vector<std::pair<std::set<std::string>, std::set<std::string>>> table = {
      {{"a", "b"}, {"a", "b"}},
      {{"a"}, {"a", "b"}},
      {{"a", "b", "c"}, {"a"}},
      {{}, {"a"}},
      {{"x", "y"}, {"a", "b", "c"}},
      {{"a", "b", "c", "d"}, {"b", "d", "e"}},
      {{"e"}, {"e"}},
      {{"a", "c"}, {"c", "d", "e", "f"}},
      {{"q"}, {"q", "r"}},
      {{"m", "n", "o"}, {"n"}},
  };
  std::vector<CasePrf> rows;
  std::vector<oracle::PrfRow> expected;
  for (std::size_t i = 0; i < table.size(); ++i) {
    rows.push_back(row("c" + std::to_string(i), table[i].first, table[i].second));
    expected.push_back(oracle::prf(table[i].first, table[i].second));
  }
  const auto m = aggregate_articles(rows);
  const auto o = oracle::mean(expected);
  EXPECT_NEAR(m.precision, o.p, 1e-12);
  EXPECT_NEAR(m.recall, o.r, 1e-12);
  EXPECT_NEAR(m.f1, o.f1, 1e-12);
  EXPECT_EQ(m.per_case.size(), 10u);
  // Macro F1 is the mean of per-case F1, not the F1 of the means.
  EXPECT_NE(m.f1, f1_score(m.precision, m.recall));
}

TEST(CriminalAccuracy, FieldByField) {
  const std::vector<CriminalFields> ref = {
      {"盗窃罪", 8, 2000}, {"诈骗罪", 36, 5000}, {"故意杀人罪", kLifeTerm, std::nullopt}, {"抢劫罪", 120, 10000}};
  const std::vector<CriminalFields> pred = {
      {"盗窃", 8, 2000}, {"诈骗罪", 24, 5000}, {"故意杀人罪", kLifeTerm, std::nullopt}, {std::nullopt, 120, 1000}};
  const auto e = criminal_accuracy(pred, ref);
  EXPECT_EQ(e.n_cases, 4u);
  EXPECT_DOUBLE_EQ(e.charge_accuracy, 0.75);
  EXPECT_DOUBLE_EQ(e.term_accuracy, 0.75);
  EXPECT_DOUBLE_EQ(e.fine_accuracy, 0.75);
  EXPECT_THROW(criminal_accuracy(pred, {}), PreconditionError);
  EXPECT_EQ(criminal_accuracy({}, {}).n_cases, 0u);
}

TEST(CriminalAccuracy, ToleranceAndLifeSentence) {
  MatchTolerance t{6, 1000};
  EXPECT_TRUE(match_criminal({"x", 30, 5500}, {"x", 36, 5000}, t).term);
  EXPECT_TRUE(match_criminal({"x", 30, 5500}, {"x", 36, 5000}, t).fine);
  EXPECT_FALSE(match_criminal({"x", 37, 0}, {"x", 30, 0}, t).term);
  EXPECT_FALSE(match_criminal({"x", kLifeTerm, 0}, {"x", 1, 0}, t).term);
  EXPECT_FALSE(match_criminal({"x", std::nullopt, 1}, {"x", 1, 1}).term);
  EXPECT_TRUE(match_criminal({"x", std::nullopt, 1}, {"x", std::nullopt, 1}).term);
  EXPECT_TRUE(match_criminal({"犯 盗窃罪", 1, 1}, {"盗窃", 1, 1}).charge);
  EXPECT_EQ(normalize_charge("盗窃罪"), "盗窃");
}

TEST(CivilSummary, PromptSubstitutesTheRawText) {
  const auto p = summarize_prompt("判决如下：被告返还借款。");
  EXPECT_EQ(p.find(kRawResultsToken), std::string::npos);
  EXPECT_NE(p.find("Current text:判决如下：被告返还借款。\nOutput List:"), std::string::npos);
  EXPECT_EQ(p.rfind("Please organize the given text into the required format.", 0), 0u);
}

TEST(CivilSummary, ExemplarReplyGivesTwoResults) {
  const std::string reply =
      "{\"Result 1\": \"The defendant should return the loan of 200000 yuan to the plaintiff\", \"Result 2\": \"The "
      "defendant  should pay interest on the funds during the occupation period at an annual interest rate of 6% "
      "from December 20, 2021 to October 19, 2023\"}";
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({reply}), "metrics");
  const auto results = summarize_civil("raw", *gw);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0], "The defendant should return the loan of 200000 yuan to the plaintiff");
  const auto req = h.log->records()[0].request;
  EXPECT_EQ(req["temperature"], 0.0);
  EXPECT_EQ(req["messages"].size(), 1u);
}

TEST(CivilSummary, ThreeResultsAndCostClausesDropped) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({R"({"Result 1": "返还借款", "Result 2": "支付利息",
      "Result 3": "驳回其他诉讼请求", "Result 4": "案件受理费由被告负担"})"}),
                   "metrics");
  EXPECT_EQ(summarize_civil("raw", *gw).size(), 3u);
}

TEST(CivilSummary, GapInKeysIsAFormatError) {
  const std::string bad = R"({"Result 1": "a", "Result 3": "c"})";
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({bad, bad, bad}), "metrics");
  try {
    summarize_civil("raw", *gw);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), "civil-summary");
  }
}

TEST(CivilMatch, ExemplarReplyWithBareKeys) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({"{Result 1: 0, Result 2: 1}"}), "metrics");
  const auto r = match_civil({"return 200000", "interest 6%"}, {"interest 6%", "return 10000"}, *gw);
  EXPECT_EQ(r.matches, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(r.accuracy(), 0.5);
  const auto prompt = h.log->records()[0].request["messages"][0]["content"].get<std::string>();
  EXPECT_NE(prompt.find("Reference answers: {\"Result 1\": \"return 200000\", \"Result 2\": \"interest 6%\"}\n"
                        "Candidate answers: {\"Result 1\": \"interest 6%\", \"Result 2\": \"return 10000\"}"),
            std::string::npos);
  EXPECT_EQ(prompt.find(kRawResultsToken), std::string::npos);
}

TEST(CivilMatch, AllOrNothing) {
  GatewayHarness h;
  auto all = h.make(MockProvider::scripted({R"({"Result 1": 1, "Result 2": 1, "Result 3": 1})"}), "metrics");
  EXPECT_DOUBLE_EQ(match_civil({"a", "b", "c"}, {"x"}, *all).accuracy(), 1.0);
  auto none = h.make(MockProvider::scripted({R"({"Result 1": 0, "Result 2": 0})"}), "metrics");
  EXPECT_DOUBLE_EQ(match_civil({"a", "b"}, {"x"}, *none).accuracy(), 0.0);
}

TEST(CivilMatch, WrongMarkCountIsAFormatError) {
  const std::string bad = R"({"Result 1": 1})";
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({bad, bad, bad}), "metrics");
  try {
    match_civil({"a", "b"}, {"x"}, *gw);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), "civil-match");
  }
  EXPECT_THROW(match_civil({}, {"x"}, *gw), PreconditionError);
}

TEST(ParseResultObject, Shapes) {
  EXPECT_EQ(parse_result_object(R"(Output list: {"Result 2": "b", "Result 1": "a"} done)").size(), 2u);
  EXPECT_THROW(parse_result_object("no object"), ParseFailure);
  EXPECT_THROW(parse_result_object("{}"), ParseFailure);
  EXPECT_THROW(parse_result_object(R"({"Answer": 1})"), ParseFailure);
  EXPECT_THROW(parse_result_object(R"({"Result 2": 1})"), ParseFailure);
}

namespace {

LegalCase reference(const std::string& id, CaseCategory cat, std::vector<std::string> gold,
                    std::optional<std::string> judgment) {
  LegalCase c;
  c.case_id = id;
  c.category = cat;
  c.gold_articles = std::move(gold);
  c.gold_judgment = std::move(judgment);
  return c;
}

}  // namespace

TEST(BuildReport, MacroF1AndOutcomes) {
  std::vector<LegalCase> refs = {
      reference("c-1", CaseCategory::criminal, {"xf-264"}, "被告人某犯盗窃罪，判处有期徒刑八个月，并处罚金人民币二千元。"),
      reference("c-2", CaseCategory::civil, {"mf-667"}, "判决被告返还借款。"),
  };
  Prediction p1;
  p1.case_id = "c-1";
  p1.articles = {"xf-264"};
  p1.criminal = CriminalFields{"盗窃罪", 8, 2000};
  Prediction p2;
  p2.case_id = "c-2";
  p2.articles = {"mf-999"};
  p2.civil_results = std::vector<std::string>{"被告返还借款"};

  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({R"({"Result 1": "被告返还借款"})", R"({"Result 1": 1})"}), "metrics");
  const auto r = build_report({p2, p1}, refs, gw.get());
  EXPECT_DOUBLE_EQ(r.articles.f1, 0.5);
  EXPECT_EQ(r.criminal.n_cases, 1u);
  EXPECT_DOUBLE_EQ(r.criminal.charge_accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.criminal.term_accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.criminal.fine_accuracy, 1.0);
  ASSERT_EQ(r.civil_per_case.size(), 1u);
  EXPECT_DOUBLE_EQ(r.civil_accuracy, 1.0);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.to_json()["metadata"]["averaging"], "macro");
  EXPECT_NE(r.to_text().find("Legal articles"), std::string::npos);
}

TEST(BuildReport, WithoutGatewayCivilIsSkippedWithAWarning) {
  std::vector<LegalCase> refs = {reference("c-2", CaseCategory::civil, {"mf-667"}, "判决被告返还借款。"),
                                 reference("gen-0001", CaseCategory::civil, {"mf-667"}, std::nullopt)};
  Prediction p;
  p.case_id = "c-2";
  p.articles = {"mf-667"};
  Prediction g = p;
  g.case_id = "gen-0001";
  const auto r = build_report({p, g}, refs, nullptr);
  EXPECT_DOUBLE_EQ(r.articles.f1, 1.0);
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_TRUE(r.civil_per_case.empty());
}

TEST(BuildReport, MismatchedIdsListEveryStray) {
  std::vector<LegalCase> refs = {reference("c-1", CaseCategory::civil, {"a"}, std::nullopt),
                                 reference("c-2", CaseCategory::civil, {"a"}, std::nullopt)};
  Prediction p;
  p.case_id = "c-1";
  Prediction q;
  q.case_id = "c-9";
  try {
    build_report({p, q}, refs, nullptr);
    FAIL();
  } catch (const KeyMismatchError& e) {
    EXPECT_EQ(e.missing().size(), 2u);
  }
}

TEST(BuildReport, PredictionFromTextAndJudgment) {
  const auto store = testkit::sample_articles();
  const auto p = prediction_from_text("c-1", "依照《刑法》第264条，被告人犯盗窃罪，判处拘役三个月。", CaseCategory::criminal, store);
  EXPECT_EQ(p.articles, (std::set<std::string>{"xf-264"}));
  ASSERT_TRUE(p.criminal.has_value());
  EXPECT_EQ(p.criminal->term_months, 3);

  adjudicator::Judgment j;
  j.case_id = "c-1";
  j.predicted_articles = {"xf-264"};
  j.criminal_outcome = adjudicator::CriminalOutcome{"盗窃罪", 0, 0.0};
  const auto q = prediction_from_judgment(j);
  EXPECT_FALSE(q.criminal->term_months.has_value());
  EXPECT_FALSE(q.criminal->fine_amount.has_value());
}
