#include <gtest/gtest.h>

#include "lexcourt/adjudicator/judge.hpp"
#include "lexcourt/adjudicator/judgment.hpp"
#include "test_support.hpp"

using namespace lexcourt;
using namespace lexcourt::adjudicator;
using gateway::MockProvider;
using lexcourt::testkit::GatewayHarness;
using lexcourt::testkit::TempDir;

namespace {

courtroom::Transcript eight_turns(const std::string& case_id) {
  courtroom::Transcript t;
  t.case_id = case_id;
  t.status = courtroom::TrialStatus::complete;
  for (std::size_t i = 0; i < 8; ++i) {
    courtroom::ArgumentTurn turn;
    turn.turn_index = i;
    turn.round = courtroom::round_of(i);
    turn.role = courtroom::party_of(i);
    turn.text = "发言" + std::to_string(i);
    turn.cited_articles = {i % 2 ? "xf-52" : "xf-264"};
    t.turns.push_back(turn);
  }
  return t;
}

retrieval::RetrievalBundle bundle() {
  retrieval::RetrievalBundle b;
  b.articles = {{"xf-264", "《刑法》第264条 盗窃公私财物……", 0.9}, {"xf-67", "《刑法》第67条 自首……", 0.5}};
  b.precedent = corpus::CorpusCase{"p-001", "盗窃案", "盗窃", corpus::Stage::first_instance, {"xf-264"}, "判决书全文"};
  return b;
}

std::string user_prompt(const gateway::CallRecord& r) { return r.request["messages"][1]["content"]; }

}  // namespace

TEST(AssembleContext, TranscriptTurnsInOrder) {
  const auto c = testkit::sample_cases()[0];
  const auto t = eight_turns(c.case_id);
  retrieval::StaticRetriever r(bundle());
  const auto ctx = assemble_context(c, &t, &r);
  std::size_t pos = 0;
  for (const auto& turn : t.turns) {
    const auto at = ctx.transcript_text.find(turn.text, pos);
    ASSERT_NE(at, std::string::npos) << turn.text;
    pos = at;
  }
  EXPECT_EQ(ctx.cited_articles, (std::vector<std::string>{"xf-264", "xf-52"}));
  EXPECT_FALSE(ctx.no_argument);
  EXPECT_EQ(ctx.candidate_articles.size(), 2u);
}

TEST(AssembleContext, AblationsAndMissingPrecedent) {
  const auto c = testkit::sample_cases()[0];
  retrieval::StaticRetriever r(bundle());
  const auto no_arg = assemble_context(c, nullptr, &r);
  EXPECT_TRUE(no_arg.no_argument);
  EXPECT_TRUE(no_arg.transcript_text.empty());

  const auto t = eight_turns(c.case_id);
  const auto no_ret = assemble_context(c, &t, nullptr);
  EXPECT_TRUE(no_ret.no_retrieval);
  EXPECT_TRUE(no_ret.candidate_articles.empty());

  retrieval::StaticRetriever articles_only(retrieval::RetrievalBundle{bundle().articles, std::nullopt});
  const auto ctx = assemble_context(c, &t, &articles_only);
  EXPECT_FALSE(ctx.precedent.has_value());

  auto partial = t;
  partial.status = courtroom::TrialStatus::in_progress;
  EXPECT_THROW(assemble_context(c, &partial, &r), PreconditionError);
  auto other = t;
  other.case_id = "c-999";
  EXPECT_THROW(assemble_context(c, &other, &r), PreconditionError);
}

TEST(AssembleContext, CandidateBudgetCapsArticles) {
  const auto c = testkit::sample_cases()[0];
  retrieval::StaticRetriever r(bundle());
  JudgeOptions o;
  o.candidate_articles = 1;
  EXPECT_EQ(assemble_context(c, nullptr, &r, o).candidate_articles.size(), 1u);
}

TEST(JudgmentRequest, SectionsFollowTheContext) {
  const auto c = testkit::sample_cases()[0];
  const auto t = eight_turns(c.case_id);
  retrieval::StaticRetriever r(bundle());
  GatewayHarness h;
  auto gw = h.make(MockProvider::pure(), "judge");
  const auto full = judgment_request(*gw, assemble_context(c, &t, &r)).messages[1].text;
  EXPECT_NE(full.find("Court debate:"), std::string::npos);
  EXPECT_NE(full.find("发言7"), std::string::npos);
  EXPECT_NE(full.find("判决书全文"), std::string::npos);
  EXPECT_NE(full.find("[xf-67]"), std::string::npos);

  const auto no_arg = judgment_request(*gw, assemble_context(c, nullptr, &r)).messages[1].text;
  EXPECT_EQ(no_arg.find("Court debate:"), std::string::npos);
  EXPECT_EQ(no_arg.find("发言"), std::string::npos);

  const auto no_ret = judgment_request(*gw, assemble_context(c, &t, nullptr)).messages[1].text;
  EXPECT_EQ(no_ret.find("判决书全文"), std::string::npos);
  EXPECT_EQ(no_ret.find("[xf-67]"), std::string::npos);
  EXPECT_NE(no_ret.find("发言7"), std::string::npos);
}

TEST(RenderJudgment, UnknownArticlesAreDroppedAndCounted) {
  const auto articles = testkit::sample_articles();
  auto c = testkit::sample_cases()[1];
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({R"({"articles": ["mf-667", "mf-675", "bogus-1"],
      "civil_results": ["被告返还借款200000元"], "analysis": "借贷关系成立"})"}),
                   "judge");
  const auto out = render_judgment(assemble_context(c, nullptr, nullptr), *gw, articles);
  EXPECT_EQ(out.judgment.predicted_articles, (std::vector<std::string>{"mf-667", "mf-675"}));
  EXPECT_EQ(out.dropped_articles, 1u);
  ASSERT_TRUE(out.judgment.civil_results.has_value());
  EXPECT_FALSE(out.judgment.criminal_outcome.has_value());
}

TEST(RenderJudgment, CriminalReplyPopulatesTheOutcome) {
  const auto articles = testkit::sample_articles();
  const auto c = testkit::sample_cases()[0];
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({R"({"articles": ["xf-264"],
      "criminal_outcome": {"charge": "theft", "term": 36, "fine": 5000}, "analysis": "a"})"}),
                   "judge");
  const auto out = render_judgment(assemble_context(c, nullptr, nullptr), *gw, articles);
  ASSERT_TRUE(out.judgment.criminal_outcome.has_value());
  EXPECT_EQ(*out.judgment.criminal_outcome, (CriminalOutcome{"theft", 36, 5000.0}));
  EXPECT_FALSE(out.judgment.civil_results.has_value());
}

TEST(RenderJudgment, CriminalOutcomeOnACivilCaseIsAFormatError) {
  const auto articles = testkit::sample_articles();
  const auto c = testkit::sample_cases()[1];
  const std::string reply = R"({"articles": ["mf-667"],
      "criminal_outcome": {"charge": "theft", "term": 36, "fine": 5000}, "analysis": "a"})";
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({reply, reply, reply}), "judge");
  try {
    render_judgment(assemble_context(c, nullptr, nullptr), *gw, articles);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), "judgment");
  }
}

TEST(ParseJudgment, RejectsIncompleteReplies) {
  const auto articles = testkit::sample_articles();
  const auto criminal = testkit::sample_cases()[0];
  EXPECT_THROW(parse_judgment(R"({"articles": ["nope"], "criminal_outcome": {"charge": "x", "term": 1, "fine": 0},
      "analysis": "a"})", criminal, articles), ParseFailure);
  EXPECT_THROW(parse_judgment(R"({"articles": ["xf-264"], "analysis": "a"})", criminal, articles), ParseFailure);
  EXPECT_THROW(parse_judgment(R"({"articles": ["xf-264"], "criminal_outcome": {"charge": "x", "term": 1.5,
      "fine": 0}, "analysis": "a"})", criminal, articles), ParseFailure);
  EXPECT_THROW(parse_judgment(R"({"articles": ["xf-264"], "criminal_outcome": {"charge": "x", "term": 1,
      "fine": 0}})", criminal, articles), ParseFailure);
  const auto life = parse_judgment(R"({"predicted_articles": ["xf-264"], "criminal_outcome": {"charge": "x",
      "prison_term_months": -1, "fine_amount": 0}, "analysis": "a"})", criminal, articles);
  EXPECT_EQ(life.judgment.criminal_outcome->prison_term_months, kLifeImprisonment);
}

TEST(Judgment, ValidationAndPersistence) {
  Judgment j;
  j.case_id = "c-1";
  j.predicted_articles = {"xf-264"};
  j.criminal_outcome = CriminalOutcome{"盗窃罪", 8, 2000};
  j.analysis = "a";
  EXPECT_NO_THROW(j.validate_for(CaseCategory::criminal));
  EXPECT_THROW(j.validate_for(CaseCategory::civil), PreconditionError);
  auto both = j;
  both.civil_results = std::vector<std::string>{"x"};
  EXPECT_THROW(both.validate(), PreconditionError);

  TempDir dir;
  j.save(dir / "b.json");
  auto k = j;
  k.case_id = "a";
  k.save(dir / "a.json");
  const auto loaded = load_judgments(dir.path());
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded[0].case_id, "a");
  EXPECT_EQ(loaded[1].to_json(), j.to_json());
}
