#include "nordlid/eval.h"

#include <gtest/gtest.h>

#include "json.hpp"
#include "support/metric_oracle.h"

namespace nordlid {
namespace {

LabelSet L(const char* s) { return LabelSet::ParseString(s); }

TEST(LooseAccuracyTest, Examples) {
  const std::vector<EvalPair> pairs = {{L("nb"), L("nb,da")},
                                       {L("other"), L("da")}};
  EXPECT_DOUBLE_EQ(LooseAccuracy(pairs, LooseMode::kSingle), 0.5);
}

TEST(LooseAccuracyTest, RejectsMultiLabelPredictions) {
  const std::vector<EvalPair> all = {{L("da,nb,nn,sv"), L("nb")}};
  EXPECT_THROW(LooseAccuracy(all, LooseMode::kSingle), std::invalid_argument);
  EXPECT_THROW(LooseAccuracy(all, LooseMode::kTop1), std::invalid_argument);
}

TEST(ExactMatchTest, Examples) {
  const std::vector<EvalPair> pairs = {{L("nb,da"), L("nb,da")},
                                       {L("nb"), L("nb,da")}};
  EXPECT_DOUBLE_EQ(ExactMatchAccuracy(pairs), 0.5);
  EXPECT_EQ(ExactMatchAccuracy({}), 0.0);
}

TEST(F1Test, HandEnumeratedCounts) {
  const std::vector<EvalPair> pairs = {{L("nb"), L("nb")},
                                       {L("nb"), L("nn")},
                                       {L("nn,nb"), L("nn,nb")}};
  const F1Scores s = PerLanguageF1(pairs);
  EXPECT_EQ(s[Language::kNb].tp, 2u);
  EXPECT_EQ(s[Language::kNb].fp, 1u);
  EXPECT_EQ(s[Language::kNb].fn, 0u);
  EXPECT_DOUBLE_EQ(*s[Language::kNb].f1, 0.8);
  EXPECT_EQ(s[Language::kNn].tp, 1u);
  EXPECT_EQ(s[Language::kNn].fn, 1u);
  EXPECT_DOUBLE_EQ(*s[Language::kNn].f1, 2.0 / 3.0);
  // da, sv and other never occur: undefined and left out of the average.
  EXPECT_FALSE(s[Language::kDa].f1.has_value());
  EXPECT_FALSE(s[Language::kOther].f1.has_value());
  EXPECT_DOUBLE_EQ(s.macro_f1, (0.8 + 2.0 / 3.0) / 2);
}

TEST(F1Test, PerfectPredictionsScoreOne) {
  const std::vector<EvalPair> pairs = {{L("da"), L("da")},
                                       {L("other"), L("other")},
                                       {L("sv,nb"), L("sv,nb")}};
  const F1Scores s = PerLanguageF1(pairs);
  for (const auto& score : s.per_language) {
    if (score.f1) EXPECT_EQ(*score.f1, 1.0);
  }
  EXPECT_EQ(s.macro_f1, 1.0);
}

TEST(F1Test, OneSidedZeroDenominatorCountsAsZero) {
  // sv is only ever predicted wrongly: precision 0, recall 0/0 -> 0.
  const F1Scores s = PerLanguageF1(std::vector<EvalPair>{{L("sv"), L("da")}});
  EXPECT_EQ(s[Language::kSv].precision, 0.0);
  EXPECT_EQ(s[Language::kSv].recall, 0.0);
  EXPECT_EQ(*s[Language::kSv].f1, 0.0);
}

TEST(MetricsTest, MatchBruteForceOracle) {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<EvalPair> pairs;
    std::vector<testing::OraclePair> oracle;
    std::vector<LabelSet> top1;
    std::vector<std::string> top1_tags;
    const size_t n = 1 + rng.Below(60);
    for (size_t i = 0; i < n; ++i) {
      const LabelSet p = testing::RandomLabelSet(rng);
      const LabelSet g = testing::RandomLabelSet(rng);
      pairs.push_back({p, g});
      oracle.push_back({testing::ToTags(p), testing::ToTags(g)});
      const auto langs = p.Languages();
      const Language t = langs[rng.Below(langs.size())];
      top1.push_back(LabelSet::Of({t}));
      top1_tags.emplace_back(LanguageTag(t));
    }
    const EvalReport r = Evaluate(pairs, top1);
    EXPECT_NEAR(r.exact_match_accuracy, testing::OracleExact(oracle), 1e-12);
    ASSERT_TRUE(r.loose_accuracy.has_value());
    EXPECT_NEAR(*r.loose_accuracy, testing::OracleLoose(oracle, top1_tags), 1e-12);
    const auto want = testing::OraclePerLanguage(oracle);
    for (Language lang : kAllLanguages) {
      const auto& w = want.at(std::string(LanguageTag(lang)));
      const auto& got = r.f1[lang];
      EXPECT_NEAR(got.precision, w.precision, 1e-12);
      EXPECT_NEAR(got.recall, w.recall, 1e-12);
      ASSERT_EQ(got.f1.has_value(), w.defined);
      if (w.defined) EXPECT_NEAR(*got.f1, w.f1, 1e-12);
    }
  }
}

TEST(EvaluateTest, LooseOmittedForMultiLabelPredictionsWithoutTop1) {
  const std::vector<EvalPair> pairs = {{L("nb,da"), L("nb")}};
  EXPECT_FALSE(Evaluate(pairs).loose_accuracy.has_value());
  const std::vector<EvalPair> single = {{L("nb"), L("nb,da")}};
  EXPECT_EQ(Evaluate(single).loose_accuracy, 1.0);
  const auto j = nlohmann::json::parse(Evaluate(pairs).ToJson());
  EXPECT_TRUE(j["loose_accuracy"].is_null());
  EXPECT_TRUE(j["per_language"]["sv"]["f1"].is_null());
  EXPECT_TRUE(j.contains("f1_convention"));
}

TEST(EvaluateTest, TableHasHeaderAndRow) {
  const std::vector<EvalPair> pairs = {{L("nb"), L("nb")}};
  const std::string table = Evaluate(pairs).ToTable("fast");
  EXPECT_NE(table.find("Exact"), std::string::npos);
  EXPECT_NE(table.find("fast"), std::string::npos);
  EXPECT_NE(table.find("100.0"), std::string::npos);
}

TEST(BenchmarkTest, WarmUpPlusTimedRuns) {
  int calls = 0;
  const std::vector<std::string> s = {"a", "b", "c"};
  const BenchmarkResult r = Benchmark([&](const std::string&) { ++calls; }, s, 3);
  EXPECT_EQ(calls, 12);
  EXPECT_EQ(r.per_run_ms_per_sample.size(), 3u);
  EXPECT_GE(r.mean_ms_per_sample, 0.0);
  EXPECT_THROW(Benchmark([](const std::string&) {}, s, 0), std::invalid_argument);
}

TEST(BenchmarkTest, SlowerPredictorMeasuresSlower) {
  const std::vector<std::string> s(20, "x");
  const BenchmarkResult fast = Benchmark([](const std::string&) {}, s, 3);
  volatile double sink = 0;
  const BenchmarkResult slow = Benchmark(
      [&](const std::string&) {
        for (int i = 0; i < 20000; ++i) sink = sink + i * 0.5;
      },
      s, 3);
  EXPECT_LT(fast.mean_ms_per_sample, slow.mean_ms_per_sample);
}

}  // namespace
}  // namespace nordlid
