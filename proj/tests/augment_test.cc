#include "nordlid/augment.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace nordlid {
namespace {

Dataset Sentences(size_t n, bool with_other) {
  Dataset d{Split::kTrain, {}};
  for (size_t i = 0; i < n; ++i) {
    const bool other = with_other && i % 5 == 0;
    d.items.push_back({"Setning nummer " + std::to_string(i),
                       other ? LabelSet::Other() : LabelSet::ParseString("nb"),
                       std::nullopt});
  }
  return d;
}

struct Alteration {
  bool at_end;
  std::string mark;
  bool spaced;
};

// Every way `augmented` can arise from `original` by one alteration.
std::vector<Alteration> Explain(const std::string& original,
                                const std::string& augmented,
                                const PunctConfig& cfg) {
  std::vector<Alteration> out;
  for (const auto& m : cfg.end_marks) {
    if (augmented == original + m) out.push_back({true, m, false});
    if (augmented == original + " " + m) out.push_back({true, m, true});
  }
  for (const auto& m : cfg.start_marks) {
    if (augmented == m + original) out.push_back({false, m, false});
    if (augmented == m + " " + original) out.push_back({false, m, true});
  }
  return out;
}

TEST(PunctuationTest, RateAndPatterns) {
  const Dataset in = Sentences(50000, true);
  PunctConfig cfg;
  cfg.seed = 3;
  PunctSummary summary;
  const Dataset out = PunctuationAugment(in, cfg, &summary);
  ASSERT_EQ(out.size(), in.size());
  EXPECT_EQ(summary.eligible, 40000u);

  size_t changed = 0, at_end = 0, spaced = 0;
  std::map<std::string, size_t> marks;
  for (size_t i = 0; i < in.size(); ++i) {
    const auto& a = in.items[i];
    const auto& b = out.items[i];
    EXPECT_EQ(a.labels, b.labels);
    if (a.text == b.text) continue;
    ASSERT_FALSE(a.labels.IsOther()) << "other item altered: " << b.text;
    const auto why = Explain(a.text, b.text, cfg);
    ASSERT_EQ(why.size(), 1u) << b.text;
    ++changed;
    at_end += why[0].at_end;
    spaced += why[0].spaced;
    ++marks[why[0].mark];
  }
  EXPECT_EQ(changed, summary.augmented);
  // Binomial(40000, 0.075): sd ~ 52.7; allow 5 sd.
  EXPECT_NEAR(static_cast<double>(changed), 3000.0, 265.0);
  EXPECT_NEAR(static_cast<double>(at_end) / changed, 0.5, 0.05);
  EXPECT_NEAR(static_cast<double>(spaced) / changed, 1.0 / 3.0, 0.05);
  EXPECT_EQ(marks.size(), 6u);  // every configured mark shows up
}

TEST(PunctuationTest, DeterministicPerSeedAndOrderIndependentDraws) {
  const Dataset in = Sentences(2000, false);
  PunctConfig cfg;
  cfg.seed = 9;
  EXPECT_EQ(PunctuationAugment(in, cfg).items, PunctuationAugment(in, cfg).items);
  cfg.seed = 10;
  const Dataset other_seed = PunctuationAugment(in, cfg);
  cfg.seed = 9;
  EXPECT_NE(other_seed.items, PunctuationAugment(in, cfg).items);
  // Item i's fate depends only on (seed, i): a prefix augments identically.
  Dataset prefix = in;
  prefix.items.erase(prefix.items.begin() + 500, prefix.items.end());
  const Dataset full = PunctuationAugment(in, cfg);
  const Dataset part = PunctuationAugment(prefix, cfg);
  for (size_t i = 0; i < part.size(); ++i) {
    EXPECT_EQ(part.items[i], full.items[i]);
  }
}

TEST(PunctuationTest, RateExtremes) {
  const Dataset in = Sentences(300, true);
  PunctConfig cfg;
  cfg.rate = 0.0;
  EXPECT_EQ(PunctuationAugment(in, cfg).items, in.items);
  cfg.rate = 1.0;
  PunctSummary summary;
  PunctuationAugment(in, cfg, &summary);
  EXPECT_EQ(summary.augmented, summary.eligible);
  cfg.rate = 1.5;
  EXPECT_THROW(PunctuationAugment(in, cfg), DataError);
}

TEST(PunctuationTest, RefusesTestSplit) {
  Dataset test = Sentences(10, false);
  test.split = Split::kTest;
  EXPECT_THROW(PunctuationAugment(test, PunctConfig{}), DataError);
}

TEST(AlphabetVariantsTest, KeepsSentencesWithLettersCaseInsensitively) {
  const std::vector<std::string> sentences = {
      "Jeg bor i Sverige", "Vi åt smörgås", "ÄRLIG TALT", "Hun så på meg"};
  const Dataset d = ExtractAlphabetVariants(
      sentences, U"äö", LabelSet::ParseString("nb"), Split::kTrain);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.items[0].text, "Vi åt smörgås");
  EXPECT_EQ(d.items[1].text, "ÄRLIG TALT");
  EXPECT_EQ(d.items[1].labels.ToString(), "nb");
  EXPECT_THROW(ExtractAlphabetVariants(sentences, U"",
                                       LabelSet::ParseString("nb")),
               DataError);
}

Dataset NerData() {
  return {Split::kTrain,
          {{"Ola bor i Bergen.", LabelSet::ParseString("nb"), {}},
           {"Kari jobber i Equinor.", LabelSet::ParseString("nb"), {}},
           {"Per reiste til Malmö.", LabelSet::ParseString("nb,nn"), {}}}};
}

std::vector<EntityAnnotation> NerAnnotations() {
  using C = EntityCategory;
  return {{0, 0, 3, C::kPerson, "Ola"},
          {0, 10, 16, C::kLocation, "Bergen"},
          {1, 0, 4, C::kPerson, "Kari"},
          {1, 14, 21, C::kOrganization, "Equinor"},
          {2, 0, 3, C::kPerson, "Per"},
          {2, 15, 21, C::kLocation, "Malmö"}};
}

TEST(NerSwapTest, SwapsWithinCategoryOnly) {
  const std::set<std::string> persons = {"Ola", "Kari", "Per"};
  const std::set<std::string> locations = {"Bergen", "Malmö"};
  bool any_change = false;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Dataset out = NerSwap(NerData(), NerAnnotations(), seed);
    ASSERT_EQ(out.size(), 3u);
    for (size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(out.items[i].labels, NerData().items[i].labels);
    }
    // Sentence 0: "<person> bor i <location>."
    const std::string& s0 = out.items[0].text;
    const size_t bor = s0.find(" bor i ");
    ASSERT_NE(bor, std::string::npos) << s0;
    EXPECT_TRUE(persons.count(s0.substr(0, bor))) << s0;
    const std::string loc = s0.substr(bor + 7, s0.size() - bor - 8);
    EXPECT_TRUE(locations.count(loc)) << s0;
    EXPECT_EQ(s0.back(), '.');
    // A single-member category can only map to itself.
    EXPECT_EQ(out.items[1].text.substr(out.items[1].text.find(" i ")),
              " i Equinor.");
    any_change = any_change || out.items != NerData().items;
  }
  EXPECT_TRUE(any_change);
  EXPECT_EQ(NerSwap(NerData(), NerAnnotations(), 5).items,
            NerSwap(NerData(), NerAnnotations(), 5).items);
}

TEST(NerSwapTest, RejectsBadAnnotations) {
  auto bad = NerAnnotations();
  bad[0].surface = "Olav";
  EXPECT_THROW(NerSwap(NerData(), bad, 1), DataError);
  bad = NerAnnotations();
  bad[5].end = 20;  // splits the two-byte "ö"
  bad[5].surface = "Malm\xc3";
  EXPECT_THROW(NerSwap(NerData(), bad, 1), DataError);
  bad = NerAnnotations();
  bad.push_back({0, 1, 3, EntityCategory::kMisc, "la"});
  EXPECT_THROW(NerSwap(NerData(), bad, 1), DataError);
  bad = NerAnnotations();
  bad[0].sentence_index = 9;
  EXPECT_THROW(NerSwap(NerData(), bad, 1), DataError);
  Dataset test = NerData();
  test.split = Split::kTest;
  EXPECT_THROW(NerSwap(test, NerAnnotations(), 1), DataError);
}

TEST(NerSwapTest, ReadsAnnotationJsonl) {
  std::istringstream in(
      "{\"sentence_index\": 0, \"start\": 0, \"end\": 3, \"category\": "
      "\"PER\", \"surface\": \"Ola\"}\n"
      "{\"sentence_index\": 0, \"start\": 10, \"end\": 16, \"category\": "
      "\"location\", \"surface\": \"Bergen\"}\n");
  const auto a = ReadAnnotations(in, "ann.jsonl");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].category, EntityCategory::kPerson);
  EXPECT_EQ(a[1].category, EntityCategory::kLocation);
  std::istringstream bad("{\"sentence_index\": 0}\n");
  EXPECT_THROW(ReadAnnotations(bad, "ann.jsonl"), DataError);
}

}  // namespace
}  // namespace nordlid
