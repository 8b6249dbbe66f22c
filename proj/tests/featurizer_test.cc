#include "nordlid/featurizer.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "nordlid/utf8.h"

namespace nordlid {
namespace {

// Reference FNV-1a with the standard 64-bit offset basis and prime.
uint64_t ReferenceFnv(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h = (h ^ c) * 1099511628211ULL;
  }
  return h;
}

// Brute-force enumeration: split on spaces, wrap, list every n-gram.
std::vector<std::string> ReferenceGrams(const std::string& text,
                                        const FeaturizerConfig& cfg) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text + " ") {
    if (c == ' ' || c == '\t' || c == '\n') {
      if (!current.empty()) tokens.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  std::vector<std::string> grams;
  for (const auto& token : tokens) {
    const std::u32string cps = U"<" + utf8::Decode(token) + U">";
    for (int n = cfg.min_n; n <= cfg.max_n; ++n) {
      for (size_t i = 0; i + n <= cps.size(); ++i) {
        grams.push_back(utf8::Encode(cps.substr(i, n)));
      }
    }
    if (cfg.include_word_unigrams) grams.push_back(utf8::Encode(cps));
  }
  return grams;
}

std::vector<uint32_t> ReferenceIds(const std::string& text,
                                   const FeaturizerConfig& cfg) {
  std::vector<uint32_t> ids;
  for (const auto& g : ReferenceGrams(text, cfg)) {
    ids.push_back(static_cast<uint32_t>(ReferenceFnv(g) % cfg.bucket_count));
  }
  return ids;
}

TEST(Fnv1aTest, KnownVectors) {
  static_assert(Fnv1a64("") == 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(FeaturizerTest, GramCountForShortText) {
  FeaturizerConfig cfg;
  cfg.include_word_unigrams = false;
  // "<på>" and "<hø>" have 4 code points each: 4 + 3 + 2 + 1 grams.
  EXPECT_EQ(Featurize("på hø", cfg).size(), 20u);
  cfg.include_word_unigrams = true;
  EXPECT_EQ(Featurize("på hø", cfg).size(), 22u);
  EXPECT_EQ(ReferenceGrams("på hø", cfg).size(), 22u);
}

TEST(FeaturizerTest, MatchesBruteForceEnumeration) {
  const std::vector<std::string> texts = {
      "Jeg har en plan.", "Æ ø å ä ö", "  mange   mellomrom  ", "x",
      "blåbærsyltetøy og smørbrød", "⟨num⟩ kr", "a\tb\nc"};
  for (int min_n = 1; min_n <= 3; ++min_n) {
    for (int max_n = min_n; max_n <= 5; ++max_n) {
      for (bool words : {false, true}) {
        FeaturizerConfig cfg;
        cfg.min_n = min_n;
        cfg.max_n = max_n;
        cfg.include_word_unigrams = words;
        cfg.bucket_count = 1u << 12;
        for (const auto& t : texts) {
          EXPECT_EQ(Featurize(t, cfg), ReferenceIds(t, cfg)) << t;
        }
      }
    }
  }
}

TEST(FeaturizerTest, EmptyAndWhitespaceOnly) {
  EXPECT_TRUE(Featurize("", FeaturizerConfig{}).empty());
  EXPECT_TRUE(Featurize(" \t ", FeaturizerConfig{}).empty());
  EXPECT_TRUE(FeaturizeSparse("   ", FeaturizerConfig{}).empty());
}

TEST(FeaturizerTest, CompactKeepsMultiplicities) {
  const SparseFeatures f = Compact({5, 1, 5, 9, 5});
  EXPECT_EQ(f.ids, (std::vector<uint32_t>{1, 5, 9}));
  EXPECT_EQ(f.counts, (std::vector<uint32_t>{1, 3, 1}));
  EXPECT_EQ(f.total, 5u);
}

TEST(FeaturizerTest, IdsStayInRange) {
  FeaturizerConfig cfg;
  cfg.bucket_count = 64;
  for (uint32_t id : Featurize("Dette er en litt lengre setning med ord", cfg)) {
    EXPECT_LT(id, 64u);
  }
}

TEST(FeaturizerConfigTest, Validation) {
  FeaturizerConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.bucket_count = 1000;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg = {};
  cfg.min_n = 3;
  cfg.max_n = 2;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg = {};
  cfg.embed_dim = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace nordlid
