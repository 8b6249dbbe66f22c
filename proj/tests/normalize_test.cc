#include "nordlid/normalize.h"

#include <gtest/gtest.h>

#include "nordlid/utf8.h"
#include "support/normalize_fuzz.h"

namespace nordlid {
namespace {

constexpr NormalizeConfig kRegexOnly{true, true, true, false, false};

TEST(NormalizeRegexTest, FixtureFile) {
  const auto fixtures = testing::LoadNormalizeFixtures(
      NORDLID_TEST_DATA_DIR "/normalize_fixtures.tsv");
  EXPECT_TRUE(fixtures.malformed.empty());
  ASSERT_GE(fixtures.cases.size(), 20u);
  for (const auto& [input, expected] : fixtures.cases) {
    EXPECT_EQ(NormalizeRegex(input, kRegexOnly), expected) << input;
  }
}

TEST(NormalizeRegexTest, AsciiPlaceholders) {
  NormalizeConfig cfg = kRegexOnly;
  cfg.ascii_placeholders = true;
  EXPECT_EQ(NormalizeRegex("Se https://a.no og 1 234,5 kr, ola@x.no", cfg),
            "Se <URL> og <num> kr, <mail>");
}

TEST(NormalizeRegexTest, FlagsAreIndependent) {
  const std::string text = "ola@x.no www.x.no 42";
  EXPECT_EQ(NormalizeRegex(text, {false, true, true, false, false}),
            "⟨mail⟩ www.x.no ⟨num⟩");
  EXPECT_EQ(NormalizeRegex(text, {true, false, true, false, false}),
            "ola@x.no ⟨URL⟩ ⟨num⟩");
  EXPECT_EQ(NormalizeRegex(text, {true, true, false, false, false}),
            "⟨mail⟩ ⟨URL⟩ 42");
  EXPECT_EQ(NormalizeRegex(text, NormalizeConfig::Raw()), text);
}

TEST(LowercaseTest, Examples) {
  EXPECT_EQ(Lowercase("Låten Heter X"), "låten heter x");
  EXPECT_EQ(Lowercase("ÆØÅ ÄÖ"), "æøå äö");
  EXPECT_EQ(Lowercase("allerede små"), "allerede små");
  const std::string caps = "ÆØÅÄÖÜÉ";
  EXPECT_EQ(utf8::Decode(Lowercase(caps)).size(), utf8::Decode(caps).size());
}

TEST(NormalizeTest, LowercasesButKeepsPlaceholders) {
  NormalizeConfig cfg;
  EXPECT_EQ(Normalize("Se HTTPS://A.NO og Ring 22 33", cfg),
            "se ⟨URL⟩ og ring ⟨num⟩");
  cfg.ascii_placeholders = true;
  const std::string once = Normalize("Mail OLA@X.NO nå", cfg);
  EXPECT_EQ(once, "mail <mail> nå");
  EXPECT_EQ(Normalize(once, cfg), once);
}

TEST(NormalizeRegexTest, IdempotentOnFuzzCorpus) {
  const auto corpus = testing::NormalizeFuzzCorpus(10000, 2024);
  for (bool ascii : {false, true}) {
    NormalizeConfig regex = kRegexOnly;
    regex.ascii_placeholders = ascii;
    NormalizeConfig full = NormalizeConfig::Training();
    full.ascii_placeholders = ascii;
    for (const auto& s : corpus) {
      const std::string once = NormalizeRegex(s, regex);
      ASSERT_EQ(NormalizeRegex(once, regex), once) << "input: " << s;
      ASSERT_TRUE(utf8::IsValid(once));
      const std::string full_once = Normalize(s, full);
      ASSERT_EQ(Normalize(full_once, full), full_once) << "input: " << s;
    }
  }
}

TEST(NormalizeRegexTest, PlaceholdersAreAtomic) {
  // No placeholder ever appears inside another one.
  for (const auto& s : testing::NormalizeFuzzCorpus(2000, 7)) {
    const std::string out = NormalizeRegex(s, kRegexOnly);
    for (auto p : {kUrlPlaceholder, kMailPlaceholder, kNumPlaceholder}) {
      for (auto q : {kUrlPlaceholder, kMailPlaceholder, kNumPlaceholder}) {
        const std::string nested = std::string(p.substr(0, p.size() - 3)) +
                                   std::string(q) + std::string(p.substr(p.size() - 3));
        ASSERT_EQ(out.find(nested), std::string::npos) << s;
      }
    }
  }
}

}  // namespace
}  // namespace nordlid
