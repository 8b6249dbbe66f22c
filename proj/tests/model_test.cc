#include "nordlid/model.h"

#include <gtest/gtest.h>

#include <cmath>

#include "nordlid/normalize.h"

namespace nordlid {
namespace {

FeaturizerConfig SmallConfig() {
  FeaturizerConfig cfg;
  cfg.bucket_count = 1u << 10;
  cfg.embed_dim = 8;
  return cfg;
}

// Forward pass written directly from the definition: average the embedding
// rows of the (repeated) feature ids, ReLU layer, sigmoid outputs.
Probabilities ReferenceForward(const FastModel& m, const std::string& text) {
  const auto& p = m.params;
  const int dim = p.dim;
  const std::vector<uint32_t> ids = Featurize(text, m.featurizer);
  std::vector<double> x(dim, 0.0);
  for (uint32_t id : ids) {
    for (int d = 0; d < dim; ++d) x[d] += p.embeddings[id * dim + d];
  }
  for (double& v : x) v = ids.empty() ? 0.0 : v / ids.size();
  std::vector<double> h(kHiddenSize);
  for (int j = 0; j < kHiddenSize; ++j) {
    double a = p.b1[j];
    for (int d = 0; d < dim; ++d) a += p.w1[j * dim + d] * x[d];
    h[j] = std::max(0.0, a);
  }
  Probabilities out;
  for (int k = 0; k < kNumOutputs; ++k) {
    double z = p.b2[k];
    for (int j = 0; j < kHiddenSize; ++j) z += p.w2[k * kHiddenSize + j] * h[j];
    out[k] = 1.0 / (1.0 + std::exp(-z));
  }
  return out;
}

TEST(ModelTest, ForwardMatchesReference) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    FastModel m = FastModel::Initialize(SmallConfig(), seed);
    // Spread the weights out so the outputs are far from 0.5.
    for (auto& v : m.params.embeddings) v *= 40.0f;
    for (auto& v : m.params.b1) v = 0.05f;
    for (const char* text : {"Jeg har en plan.", "Eg har ein plan.", "ø",
                             "Jag har en plan med många ord i sig"}) {
      const Probabilities got = Forward(m, text);
      const Probabilities want = ReferenceForward(m, text);
      for (int k = 0; k < kNumOutputs; ++k) {
        EXPECT_NEAR(got[k], want[k], 1e-6) << text;
      }
    }
  }
}

TEST(ModelTest, ZeroWeightsGiveOneHalf) {
  FastModel m = FastModel::Initialize(SmallConfig(), 1);
  m.params.Resize(m.params.bucket_count, m.params.dim);
  for (double p : Forward(m, "Hei")) EXPECT_EQ(p, 0.5);
  // Ties at the threshold are kept: every language passes.
  EXPECT_EQ(Predict(m, "Hei").ToString(), "da,nb,nn,sv");
}

TEST(ModelTest, EmptyInputUsesBiasesOnly) {
  FastModel m = FastModel::Initialize(SmallConfig(), 2);
  m.params.b2 = {3.0f, -3.0f, -3.0f, -3.0f};
  const Probabilities p = Forward(m, "   ");
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-3.0)), 1e-12);
  EXPECT_EQ(Predict(m, "").ToString(), "da");
}

TEST(DecisionTest, ThresholdAndFallback) {
  EXPECT_EQ(Decide({0.9, 0.6, 0.1, 0.2}, 0.5).ToString(), "da,nb");
  EXPECT_EQ(Decide({0.5, 0.49, 0.1, 0.2}, 0.5).ToString(), "da");
  EXPECT_TRUE(Decide({0.1, 0.2, 0.3, 0.4}, 0.5).IsOther());
  EXPECT_EQ(Top1({0.9, 0.95, 0.1, 0.2}, 0.5).ToString(), "nb");
  EXPECT_TRUE(Top1({0.1, 0.2, 0.3, 0.4}, 0.5).IsOther());
}

TEST(ModelTest, TargetsFollowLabels) {
  EXPECT_EQ(TargetsFor(LabelSet::ParseString("nb,sv")),
            (Targets{0.0, 1.0, 0.0, 1.0}));
  EXPECT_EQ(TargetsFor(LabelSet::Other()), (Targets{0.0, 0.0, 0.0, 0.0}));
}

TEST(ModelTest, PredictTextAppliesStoredNormalization) {
  FastModel m = FastModel::Initialize(SmallConfig(), 3);
  for (auto& v : m.params.embeddings) v *= 40.0f;
  m.normalize = NormalizeConfig::Training();
  const Prediction a = PredictText(m, "Ring 22 33 44 NÅ");
  EXPECT_EQ(a.probs, Forward(m, Normalize("Ring 22 33 44 NÅ", m.normalize)));
  EXPECT_EQ(a.probs, Forward(m, "ring ⟨num⟩ nå"));
}

TEST(ModelTest, HeadParameterCounts) {
  EXPECT_EQ(HeadParameterCount(322), 20932u);
  EXPECT_EQ(HeadParameterCount(32), 64u * 32 + 64 + 256 + 4);
  const FastModel m = FastModel::Initialize(SmallConfig(), 1);
  EXPECT_EQ(m.HeadParameterCount(), HeadParameterCount(8));
}

TEST(ModelTest, InitializationIsSeeded) {
  EXPECT_EQ(FastModel::Initialize(SmallConfig(), 4),
            FastModel::Initialize(SmallConfig(), 4));
  EXPECT_FALSE(FastModel::Initialize(SmallConfig(), 4) ==
               FastModel::Initialize(SmallConfig(), 5));
}

}  // namespace
}  // namespace nordlid
