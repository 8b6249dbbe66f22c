// The fast multi-label classifier: hashed n-gram sentence embedding, one
// hidden ReLU layer of width 64 and four sigmoid outputs (da, nb, nn, sv).

#ifndef NORDLID_MODEL_H_
#define NORDLID_MODEL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "nordlid/core.h"
#include "nordlid/featurizer.h"
#include "nordlid/network.h"
#include "nordlid/normalize.h"

namespace nordlid {

struct FastModel {
  FeaturizerConfig featurizer;
  // Preprocessing the model was trained with; applied by the *Text helpers.
  NormalizeConfig normalize = NormalizeConfig::Raw();
  double threshold = 0.5;
  NetworkParams<float> params;

  // Random initialization: embeddings uniform in +-1/sqrt(embed_dim), Glorot
  // uniform layers, zero biases.
  static FastModel Initialize(const FeaturizerConfig& featurizer,
                              uint64_t seed);

  // 64*dim + 64 + 4*64 + 4, excluding the embedding table.
  size_t HeadParameterCount() const;

  // Throws std::invalid_argument on shape mismatch, non-finite weights or a
  // threshold outside (0, 1).
  void Validate() const;

  friend bool operator==(const FastModel&, const FastModel&) = default;
};

constexpr size_t HeadParameterCount(int embed_dim) {
  return static_cast<size_t>(kHiddenSize) * embed_dim + kHiddenSize +
         static_cast<size_t>(kNumOutputs) * kHiddenSize + kNumOutputs;
}

// Language index k of the output vector is kScandinavian[k].
Targets TargetsFor(LabelSet labels);

// `text` is expected to be preprocessed already.
Probabilities Forward(const FastModel& model, std::string_view text);
Probabilities ForwardFeatures(const FastModel& model,
                              const SparseFeatures& features);

// Languages with p >= threshold; {other} if there are none.
LabelSet Decide(const Probabilities& probs, double threshold);
// The single most probable language, or {other} if Decide() gives {other}.
LabelSet Top1(const Probabilities& probs, double threshold);

LabelSet Predict(const FastModel& model, std::string_view text);

struct Prediction {
  LabelSet labels;
  LabelSet top1;
  Probabilities probs;
};

// End-to-end: applies model.normalize, featurizes, runs the network.
Prediction PredictText(const FastModel& model, std::string_view raw_text);

}  // namespace nordlid

#endif  // NORDLID_MODEL_H_
