#include <gtest/gtest.h>

#include "lexcourt/courtroom/courtroom.hpp"
#include "lexcourt/evolution/refine.hpp"
#include "lexcourt/util/utf8.hpp"
#include "test_support.hpp"

using namespace lexcourt;
using namespace lexcourt::courtroom;
using gateway::ChatRequest;
using gateway::MockProvider;
using lexcourt::testkit::GatewayHarness;
using lexcourt::testkit::TempDir;

namespace {

LegalCase loan_case() {
  LegalCase c;
  c.case_id = "c-1";
  c.facts = "原告向被告出借200000元，被告到期未还。";
  c.indictment = "请求判令被告返还借款。";
  c.plea = "被告称已部分还款。";
  c.gold_articles = {"mf-667"};
  return c;
}

retrieval::RetrievalBundle three_articles() {
  retrieval::RetrievalBundle b;
  b.articles = {{"mf-667", "《民法典》第667条 借款合同是借款人向贷款人借款的合同。", 0.9},
                {"mf-675", "《民法典》第675条 借款人应当按照约定的期限返还借款。", 0.8},
                {"mf-676", "《民法典》第676条 借款人未按照约定的期限返还借款的，应当支付逾期利息。", 0.7}};
  return b;
}

// Lawyer that numbers its turns and cites the first retrieved article.
gateway::Responder counting_lawyer(const std::string& who) {
  return [who](const ChatRequest& req) {
    const auto& turn = req.attributes.at("turn_index");
    return who + " argument for turn " + turn + "\n" + kCitationMarker +
           R"( {"articles": ["mf-667"], "precedents": []})";
  };
}

std::string score_reply(int s1, int s2, int s3) {
  return nlohmann::json{{"s1", s1}, {"s2", s2}, {"s3", s3}, {"feedback", "cite more"}}.dump();
}

std::string user_prompt(const gateway::CallRecord& r) {
  std::string out;
  for (const auto& m : r.request["messages"])
    if (m["role"] == "user") out += m["content"].get<std::string>();
  return out;
}

}  // namespace

TEST(Trailer, RoundTripsCitations) {
  const auto text = render_with_trailer("论点", {"a", "b"}, {"p-1"});
  const auto v = parse_turn_reply(text);
  EXPECT_EQ(v.text, "论点");
  EXPECT_EQ(v.cited_articles, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.cited_precedents, (std::vector<std::string>{"p-1"}));
  EXPECT_EQ(parse_turn_reply("no trailer here").cited_articles.size(), 0u);
  EXPECT_THROW(parse_turn_reply(std::string("body\n") + kCitationMarker + " {broken"), ParseFailure);
  EXPECT_THROW(parse_turn_reply("   "), TurnGenerationError);
}

TEST(Protocol, PartiesAndRoundsByIndex) {
  EXPECT_EQ(party_of(0), Party::plaintiff);
  EXPECT_EQ(party_of(7), Party::defendant);
  EXPECT_EQ(round_of(1), 0);
  EXPECT_EQ(round_of(6), 3);
  Transcript t;
  EXPECT_EQ(t.expected_turns(), 8u);
}

TEST(OpenProceedings, ScriptedOpeningsLandAtTurnsZeroAndOne) {
  GatewayHarness h;
  auto p = h.make(MockProvider::scripted({"起诉状"}), "lawyer_plaintiff");
  auto d = h.make(MockProvider::scripted({"答辩状"}), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  const auto t = court.open_proceedings(loan_case());
  ASSERT_EQ(t.turns.size(), 2u);
  EXPECT_EQ(t.turns[0].text, "起诉状");
  EXPECT_EQ(t.turns[0].role, Party::plaintiff);
  EXPECT_EQ(t.turns[1].text, "答辩状");
  EXPECT_EQ(t.turns[1].role, Party::defendant);
  EXPECT_EQ(t.status, TrialStatus::in_progress);
}

TEST(OpenProceedings, EmptyComplaintIsATurnGenerationError) {
  GatewayHarness h;
  auto p = h.make(MockProvider::scripted({""}), "lawyer_plaintiff");
  auto d = h.make(MockProvider::scripted({"答辩状"}), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  std::optional<Transcript> persisted;
  EXPECT_THROW(court.run_full_trial(loan_case(), nullptr, std::nullopt, [&](const Transcript& t) { persisted = t; }),
               TurnGenerationError);
  ASSERT_TRUE(persisted.has_value());
  EXPECT_TRUE(persisted->turns.empty());
}

TEST(OpenProceedings, OpeningPromptsCarryEveryRetrievedArticle) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  const auto bundle = three_articles();
  retrieval::StaticRetriever r(bundle);
  Courtroom court(*p, *d, r);
  court.open_proceedings(loan_case());
  const auto recs = h.log->records();
  ASSERT_EQ(recs.size(), 2u);
  for (const auto& rec : recs)
    for (const auto& a : bundle.articles) EXPECT_NE(user_prompt(rec).find(a.text), std::string::npos);
  EXPECT_NE(user_prompt(recs[0]).find("请求判令被告返还借款。"), std::string::npos);
  EXPECT_NE(user_prompt(recs[1]).find("被告称已部分还款。"), std::string::npos);
}

TEST(RunRound, AdvancesByTwoAndEnforcesOrder) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  const auto c = loan_case();
  auto t = court.open_proceedings(c);
  EXPECT_THROW(court.run_round(t, c, 2), TrialOrderError);
  court.run_round(t, c, 1);
  ASSERT_EQ(t.turns.size(), 4u);
  EXPECT_EQ(t.turns[2].round, 1);
  EXPECT_EQ(t.turns[3].cited_articles, (std::vector<std::string>{"mf-667"}));
  EXPECT_EQ(t.turns[3].text, "D argument for turn 3");
}

TEST(RunRound, EachTurnSeesTheOpponentsLatestText) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r, CourtroomOptions{1});
  const auto t = court.run_full_trial(loan_case(), nullptr);
  const auto recs = h.log->records();
  ASSERT_EQ(recs.size(), 4u);
  for (std::size_t i = 1; i < recs.size(); ++i)
    EXPECT_NE(user_prompt(recs[i]).find(t.turns[i - 1].text), std::string::npos) << "turn " << i;
}

TEST(FullTrial, EightTurnsInRoleOrderWithScoredVariants) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  auto e = h.make(MockProvider::pure([](const ChatRequest&) { return score_reply(3, 3, 3); }), "evaluator");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  evolution::Evolver evolver(*e, {3});
  const auto t = court.run_full_trial(loan_case(), &evolver);
  ASSERT_EQ(t.turns.size(), 8u);
  EXPECT_TRUE(t.complete());
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(t.turns[i].role, i % 2 == 0 ? Party::plaintiff : Party::defendant);
    EXPECT_EQ(t.turns[i].turn_index, i);
    EXPECT_EQ(t.turns[i].variants.size(), 4u);
    for (const auto& v : t.turns[i].variants) EXPECT_TRUE(v.score.has_value());
    EXPECT_FALSE(t.turns[i].prompt.empty());
  }
  EXPECT_EQ(h.log->counts_by_role().at("evaluator"), 32u);
}

TEST(FullTrial, NoRefinementLeavesOneUnscoredVariant) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  auto e = h.make(MockProvider::pure(), "evaluator");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  evolution::Evolver evolver(*e, {0});
  const auto t = court.run_full_trial(loan_case(), &evolver);
  ASSERT_EQ(t.turns.size(), 8u);
  for (const auto& turn : t.turns) {
    ASSERT_EQ(turn.variants.size(), 1u);
    EXPECT_FALSE(turn.variants[0].score.has_value());
  }
  EXPECT_EQ(h.log->counts_by_role().count("evaluator"), 0u);
}

TEST(FullTrial, FailureInRoundTwoPersistsFourTurnsAndResumes) {
  TempDir dir;
  const auto path = dir / "c-1.json";
  const auto c = loan_case();
  {
    GatewayHarness h;
    // Complaint and round 1 succeed; the round-2 plaintiff turn has no reply.
    auto p = h.make(MockProvider::scripted({"complaint", "round one"}), "lawyer_plaintiff");
    auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
    retrieval::StaticRetriever r(three_articles());
    Courtroom court(*p, *d, r);
    EXPECT_THROW(court.run_full_trial(c, nullptr, std::nullopt, [&](const Transcript& t) { t.save(path); }),
                 ScriptExhaustedError);
  }
  auto partial = Transcript::load(path);
  EXPECT_EQ(partial.status, TrialStatus::in_progress);
  ASSERT_EQ(partial.turns.size(), 4u);

  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  const auto t = court.run_full_trial(c, nullptr, partial);
  ASSERT_EQ(t.turns.size(), 8u);
  EXPECT_EQ(t.turns[2].text, "round one");
  EXPECT_EQ(h.log->counts_by_role().at("lawyer_plaintiff"), 2u);
  EXPECT_EQ(h.log->counts_by_role().at("lawyer_defendant"), 2u);
}

TEST(FullTrial, ResumingAnotherCasesTranscriptIsRefused) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r);
  Transcript other;
  other.case_id = "someone-else";
  EXPECT_THROW(court.run_full_trial(loan_case(), nullptr, other), Error);
}

TEST(Transcript, JsonRoundTrip) {
  GatewayHarness h;
  auto p = h.make(MockProvider::pure(counting_lawyer("P")), "lawyer_plaintiff");
  auto d = h.make(MockProvider::pure(counting_lawyer("D")), "lawyer_defendant");
  auto e = h.make(MockProvider::pure([](const ChatRequest&) { return score_reply(1, 2, 3); }), "evaluator");
  retrieval::StaticRetriever r(three_articles());
  Courtroom court(*p, *d, r, CourtroomOptions{2});
  evolution::Evolver evolver(*e, {1});
  const auto t = court.run_full_trial(loan_case(), &evolver);
  EXPECT_EQ(t.turns.size(), 6u);
  EXPECT_EQ(Transcript::from_json(t.to_json()).to_json(), t.to_json());
}

TEST(LawyerContext, RespectsTopArticlesAndBudget) {
  auto b = three_articles();
  b.precedent = corpus::CorpusCase{"p-1", "借款案", "民间借贷纠纷", corpus::Stage::first_instance, {}, "判决返还借款。"};
  const auto full = lawyer_context(b, 5, 100000);
  EXPECT_NE(full.find("[mf-676]"), std::string::npos);
  EXPECT_NE(full.find("[p-1]"), std::string::npos);
  const auto top1 = lawyer_context(b, 1, 100000);
  EXPECT_EQ(top1.find("[mf-675]"), std::string::npos);
  const auto tiny = lawyer_context(b, 5, 10);
  EXPECT_EQ(utf8::decode(tiny).size(), 10u);
}
