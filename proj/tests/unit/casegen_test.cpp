#include <gtest/gtest.h>

#include "lexcourt/casegen/forge.hpp"
#include "test_support.hpp"

using namespace lexcourt;
using namespace lexcourt::casegen;
using gateway::MockProvider;
using lexcourt::testkit::GatewayHarness;

namespace {

// Lease-dispute case used as a reference generation.
const char* const kLeaseFacts =
    "On August 15, 2023, the plaintiff Li signed a housing lease contract with the defendant Zhang, agreeing that "
    "Li would lease a property located in Haidian District, Beijing to Zhang for a period of one year, with a "
    "monthly rent of 5000 yuan.";
const char* const kLeaseIndictment =
    "The plaintiff Li requests the court to order the termination of the lease contract between him and the "
    "defendant Zhang, and demands that Zhang pay a total of 15000 yuan in rent arrears.";
const char* const kLeasePlea =
    "The defendant Zhang argued that due to poor management of the company, the defendant is currently facing "
    "financial difficulties and is unable to pay rent temporarily.";

std::string lease_reply() {
  return nlohmann::json{{"facts", kLeaseFacts}, {"indictment", kLeaseIndictment}, {"plea", kLeasePlea}}.dump();
}

std::string verdict(bool ok, const std::string& rationale = "fine") {
  return nlohmann::json{{"correctness", true},
                        {"reality", true},
                        {"rationality", true},
                        {"complexity_pass", ok},
                        {"rationale", rationale}}
      .dump();
}

std::vector<corpus::LawArticle> two_civil_articles() {
  return {testkit::article("mf-509", "中华人民共和国民法典", 509, "当事人应当按照约定全面履行自己的义务。"),
          testkit::article("mf-577", "中华人民共和国民法典", 577, "当事人一方不履行合同义务的，应当承担违约责任。")};
}

corpus::ArticleStore forge_corpus() {
  corpus::ArticleStore store;
  std::vector<corpus::LawArticle> batch;
  for (int i = 0; i < 6; ++i)
    batch.push_back(testkit::article("c-" + std::to_string(i), "中华人民共和国民法典", 500 + i, "条文" + std::to_string(i)));
  store.ingest(batch);
  return store;
}

}  // namespace

TEST(GenerateCase, ParsesTheThreeSections) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({"Here is the case:\n" + lease_reply()}), "case_generator");
  const auto c = generate_case(two_civil_articles(), *gw, "gen-0001");
  EXPECT_EQ(c.facts.rfind("On August 15, 2023, the plaintiff Li signed a housing lease contract", 0), 0u);
  EXPECT_EQ(c.plea, kLeasePlea);
  EXPECT_EQ(c.gold_articles, (std::vector<std::string>{"mf-509", "mf-577"}));
  EXPECT_EQ(c.category, CaseCategory::civil);
  EXPECT_EQ(c.origin, CaseOrigin::generated);
  EXPECT_FALSE(c.gold_judgment.has_value());

  const auto prompt = h.log->records()[0].request["messages"][1]["content"].get<std::string>();
  EXPECT_NE(prompt.find("当事人应当按照约定全面履行自己的义务。"), std::string::npos);
}

TEST(GenerateCase, MissingPleaIsAGenerationFormatError) {
  GatewayHarness h;
  const std::string reply = R"({"facts": "f", "indictment": "i"})";
  auto gw = h.make(MockProvider::scripted({reply, reply, reply}), "case_generator");
  try {
    generate_case(two_civil_articles(), *gw, "gen-0001");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), "generation");
  }
}

TEST(GenerateCase, ArticleCountOutside2To5IsAPrecondition) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::pure(), "case_generator");
  EXPECT_THROW(generate_case({}, *gw, "x"), PreconditionError);
  auto six = two_civil_articles();
  while (six.size() < 6) six.push_back(six.front());
  EXPECT_THROW(generate_case(six, *gw, "x"), PreconditionError);
}

TEST(GenerateCase, CategoryFollowsTheArticles) {
  auto arts = two_civil_articles();
  EXPECT_EQ(infer_category(arts), CaseCategory::civil);
  arts[0].statute_name = "中华人民共和国行政处罚法";
  EXPECT_EQ(infer_category(arts), CaseCategory::administrative);
  arts[1].category = corpus::ArticleCategory::criminal;
  EXPECT_EQ(infer_category(arts), CaseCategory::criminal);
}

TEST(VetCase, AllChecksPassAccepts) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({verdict(true)}), "evaluator");
  LegalCase c;
  c.case_id = "x";
  EXPECT_TRUE(vet_case(c, two_civil_articles(), *gw).accepted());
}

TEST(VetCase, ComplexityFailureRejectsWithRationale) {
  GatewayHarness h;
  auto gw = h.make(MockProvider::scripted({verdict(false, "too simple")}), "evaluator");
  LegalCase c;
  const auto v = vet_case(c, two_civil_articles(), *gw);
  EXPECT_FALSE(v.accepted());
  EXPECT_EQ(v.rationale, "too simple");
}

TEST(VetCase, MissingFieldIsAnEvaluationFormatError) {
  GatewayHarness h;
  const std::string bad = R"({"correctness": true, "reality": true, "rationale": "x"})";
  auto gw = h.make(MockProvider::scripted({bad, bad, bad}), "evaluator");
  try {
    vet_case(LegalCase{}, two_civil_articles(), *gw);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), "evaluation");
  }
}

TEST(ForgeBatch, AcceptingEverythingFillsEverySlot) {
  GatewayHarness h;
  auto gen = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return lease_reply(); }), "case_generator");
  auto vet = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return verdict(true); }), "evaluator");
  ForgeOptions o;
  o.n_target = 5;
  const auto result = forge_batch(forge_corpus(), *gen, *vet, o);
  EXPECT_EQ(result.accepted.size(), 5u);
  EXPECT_DOUBLE_EQ(result.stats.acceptance_rate(), 1.0);
  EXPECT_EQ(result.accepted[4].legal_case.case_id, "gen-0005");
  for (const auto& v : result.accepted) {
    const auto n = v.legal_case.gold_articles.size();
    EXPECT_GE(n, 2u);
    EXPECT_LE(n, 5u);
  }
}

TEST(ForgeBatch, RejectingEverythingExhaustsAfterMaxAttempts) {
  GatewayHarness h;
  auto gen = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return lease_reply(); }), "case_generator");
  auto vet = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return verdict(false); }), "evaluator");
  ForgeOptions o;
  o.n_target = 1;
  o.max_attempts_per_case = 3;
  try {
    forge_batch(forge_corpus(), *gen, *vet, o);
    FAIL();
  } catch (const ForgeExhaustedError& e) {
    EXPECT_EQ(e.stats().attempts, 3u);
    EXPECT_EQ(e.stats().rejected, 3u);
  }
}

TEST(ForgeBatch, AlternatingVetterHalvesTheAcceptanceRate) {
  GatewayHarness h;
  auto gen = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return lease_reply(); }), "case_generator");
  int n = 0;
  auto vet = h.make(MockProvider::pure([&n](const gateway::ChatRequest&) { return verdict(++n % 2 == 0); }),
                    "evaluator");
  ForgeOptions o;
  o.n_target = 2;
  const auto result = forge_batch(forge_corpus(), *gen, *vet, o);
  EXPECT_EQ(result.accepted.size(), 2u);
  EXPECT_EQ(result.stats.attempts, 4u);
  EXPECT_DOUBLE_EQ(result.stats.acceptance_rate(), 0.5);
  ASSERT_EQ(result.rejections.size(), 2u);
  EXPECT_EQ(result.rejections[0].case_attempt_id, "attempt-0001");
}

TEST(ForgeBatch, SameSeedSamplesTheSameArticles) {
  auto run = [](std::uint64_t seed) {
    GatewayHarness h;
    auto gen = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return lease_reply(); }), "g");
    auto vet = h.make(MockProvider::pure([](const gateway::ChatRequest&) { return verdict(true); }), "v");
    ForgeOptions o;
    o.n_target = 3;
    o.seed = seed;
    std::vector<std::vector<std::string>> out;
    for (const auto& v : forge_batch(forge_corpus(), *gen, *vet, o).accepted) out.push_back(v.legal_case.gold_articles);
    return out;
  };
  EXPECT_EQ(run(11), run(11));
}

TEST(ForgeBatch, TooFewArticlesIsInsufficientCorpus) {
  corpus::ArticleStore store;
  store.ingest({testkit::article("a", "民法典", 1, "b")});
  GatewayHarness h;
  auto gw = h.make(MockProvider::pure(), "g");
  EXPECT_THROW(forge_batch(store, *gw, *gw, ForgeOptions{}), InsufficientCorpusError);
}
