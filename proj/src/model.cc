#include "nordlid/model.h"

#include <cmath>
#include <stdexcept>

#include "nordlid/random.h"

namespace nordlid {

namespace {

template <typename Vec>
bool AllFinite(const Vec& v) {
  for (float x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void FillUniform(std::vector<float>& v, double bound, Rng& rng) {
  for (float& x : v) x = static_cast<float>(rng.Uniform(-bound, bound));
}

}  // namespace

FastModel FastModel::Initialize(const FeaturizerConfig& featurizer,
                                uint64_t seed) {
  featurizer.Validate();
  FastModel m;
  m.featurizer = featurizer;
  const int dim = featurizer.embed_dim;
  m.params.Resize(featurizer.bucket_count, dim);
  Rng rng(seed);
  FillUniform(m.params.embeddings, 1.0 / std::sqrt(dim), rng);
  FillUniform(m.params.w1, std::sqrt(6.0 / (dim + kHiddenSize)), rng);
  FillUniform(m.params.w2, std::sqrt(6.0 / (kHiddenSize + kNumOutputs)), rng);
  return m;
}

size_t FastModel::HeadParameterCount() const {
  return params.w1.size() + params.b1.size() + params.w2.size() +
         params.b2.size();
}

void FastModel::Validate() const {
  featurizer.Validate();
  const auto& p = params;
  const size_t dim = static_cast<size_t>(featurizer.embed_dim);
  if (p.dim != featurizer.embed_dim ||
      p.bucket_count != featurizer.bucket_count ||
      p.embeddings.size() != featurizer.bucket_count * dim ||
      p.w1.size() != kHiddenSize * dim || p.b1.size() != kHiddenSize ||
      p.w2.size() != kNumOutputs * kHiddenSize ||
      p.b2.size() != kNumOutputs) {
    throw std::invalid_argument("model weight shapes do not match its config");
  }
  if (!AllFinite(p.embeddings) || !AllFinite(p.w1) || !AllFinite(p.b1) ||
      !AllFinite(p.w2) || !AllFinite(p.b2)) {
    throw std::invalid_argument("model has non-finite weights");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
}

Targets TargetsFor(LabelSet labels) {
  Targets y{};
  for (int k = 0; k < kNumOutputs; ++k) {
    y[k] = labels.Contains(kScandinavian[k]) ? 1.0 : 0.0;
  }
  return y;
}

Probabilities ForwardFeatures(const FastModel& model,
                              const SparseFeatures& features) {
  Activations act;
  ForwardPass(model.params, features, act);
  return act.probs;
}

Probabilities Forward(const FastModel& model, std::string_view text) {
  return ForwardFeatures(model, FeaturizeSparse(text, model.featurizer));
}

LabelSet Decide(const Probabilities& probs, double threshold) {
  uint8_t bits = 0;
  for (int k = 0; k < kNumOutputs; ++k) {
    if (probs[k] >= threshold) bits |= static_cast<uint8_t>(1u << k);
  }
  return bits == 0 ? LabelSet::Other() : LabelSet::FromBits(bits);
}

LabelSet Top1(const Probabilities& probs, double threshold) {
  int best = 0;
  for (int k = 1; k < kNumOutputs; ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  if (probs[best] < threshold) return LabelSet::Other();
  return LabelSet::Of({kScandinavian[best]});
}

LabelSet Predict(const FastModel& model, std::string_view text) {
  return Decide(Forward(model, text), model.threshold);
}

Prediction PredictText(const FastModel& model, std::string_view raw_text) {
  const Probabilities probs =
      model.normalize.IsIdentity()
          ? Forward(model, raw_text)
          : Forward(model, Normalize(raw_text, model.normalize));
  return {Decide(probs, model.threshold), Top1(probs, model.threshold), probs};
}

}  // namespace nordlid
