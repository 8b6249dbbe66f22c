// Forward and backward passes of the classifier head:
//
//   e = mean of embedding rows over the feature multiset (zero if empty)
//   h = ReLU(W1 e + b1),  z = W2 h + b2,  p = sigmoid(z)
//   loss = mean over the four outputs of binary cross-entropy(p, y)
//
// Templated on the parameter type: models store float, the gradient checker
// instantiates double. Accumulation is always double.

#ifndef NORDLID_NETWORK_H_
#define NORDLID_NETWORK_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nordlid/featurizer.h"

namespace nordlid {

inline constexpr int kHiddenSize = 64;
inline constexpr int kNumOutputs = 4;

using Probabilities = std::array<double, kNumOutputs>;
using Targets = std::array<double, kNumOutputs>;

template <typename T>
struct NetworkParams {
  uint32_t bucket_count = 0;
  int dim = 0;
  std::vector<T> embeddings;  // bucket_count x dim, row-major
  std::vector<T> w1;          // kHiddenSize x dim
  std::vector<T> b1;          // kHiddenSize
  std::vector<T> w2;          // kNumOutputs x kHiddenSize
  std::vector<T> b2;          // kNumOutputs

  void Resize(uint32_t buckets, int embed_dim) {
    bucket_count = buckets;
    dim = embed_dim;
    embeddings.assign(static_cast<size_t>(buckets) * dim, T(0));
    w1.assign(static_cast<size_t>(kHiddenSize) * dim, T(0));
    b1.assign(kHiddenSize, T(0));
    w2.assign(static_cast<size_t>(kNumOutputs) * kHiddenSize, T(0));
    b2.assign(kNumOutputs, T(0));
  }

  template <typename U>
  NetworkParams<U> Cast() const {
    NetworkParams<U> out;
    out.bucket_count = bucket_count;
    out.dim = dim;
    out.embeddings.assign(embeddings.begin(), embeddings.end());
    out.w1.assign(w1.begin(), w1.end());
    out.b1.assign(b1.begin(), b1.end());
    out.w2.assign(w2.begin(), w2.end());
    out.b2.assign(b2.begin(), b2.end());
    return out;
  }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

inline double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
inline double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

struct Activations {
  std::vector<double> embedding;
  std::array<double, kHiddenSize> pre_hidden{};
  std::array<double, kHiddenSize> hidden{};
  std::array<double, kNumOutputs> logits{};
  Probabilities probs{};
};

template <typename T>
void ForwardPass(const NetworkParams<T>& net, const SparseFeatures& features,
                 Activations& act) {
  const int dim = net.dim;
  act.embedding.assign(dim, 0.0);
  if (features.total > 0) {
    for (size_t j = 0; j < features.ids.size(); ++j) {
      const T* row = &net.embeddings[static_cast<size_t>(features.ids[j]) * dim];
      const double c = features.counts[j];
      for (int d = 0; d < dim; ++d) act.embedding[d] += c * row[d];
    }
    const double inv = 1.0 / features.total;
    for (int d = 0; d < dim; ++d) act.embedding[d] *= inv;
  }
  for (int j = 0; j < kHiddenSize; ++j) {
    const T* row = &net.w1[static_cast<size_t>(j) * dim];
    double a = net.b1[j];
    for (int d = 0; d < dim; ++d) a += row[d] * act.embedding[d];
    act.pre_hidden[j] = a;
    act.hidden[j] = a > 0.0 ? a : 0.0;
  }
  for (int k = 0; k < kNumOutputs; ++k) {
    const T* row = &net.w2[static_cast<size_t>(k) * kHiddenSize];
    double z = net.b2[k];
    for (int j = 0; j < kHiddenSize; ++j) z += row[j] * act.hidden[j];
    act.logits[k] = z;
    act.probs[k] = Sigmoid(z);
  }
}

// Mean BCE over the outputs, computed from logits for stability.
inline double BceLoss(const std::array<double, kNumOutputs>& logits,
                      const Targets& y) {
  double loss = 0.0;
  for (int k = 0; k < kNumOutputs; ++k) {
    loss += Softplus(logits[k]) - y[k] * logits[k];
  }
  return loss / kNumOutputs;
}

// Embedding-row gradients for the rows a batch touched.
class SparseRowGradients {
 public:
  void Reset(uint32_t bucket_count, int dim) {
    if (slot_.size() != bucket_count || dim_ != dim) {
      slot_.assign(bucket_count, -1);
      dim_ = dim;
      rows_.clear();
      values_.clear();
    }
    Clear();
  }
  void Clear() {
    for (uint32_t r : rows_) slot_[r] = -1;
    rows_.clear();
    values_.clear();
  }
  double* Row(uint32_t row) {
    int32_t s = slot_[row];
    if (s < 0) {
      s = static_cast<int32_t>(rows_.size());
      slot_[row] = s;
      rows_.push_back(row);
      values_.resize(values_.size() + dim_, 0.0);
    }
    return &values_[static_cast<size_t>(s) * dim_];
  }
  // nullptr when the row was not touched.
  const double* Find(uint32_t row) const {
    const int32_t s = slot_[row];
    return s < 0 ? nullptr : &values_[static_cast<size_t>(s) * dim_];
  }
  const std::vector<uint32_t>& rows() const { return rows_; }
  int dim() const { return dim_; }

 private:
  std::vector<int32_t> slot_;
  std::vector<uint32_t> rows_;
  std::vector<double> values_;
  int dim_ = 0;
};

struct Gradients {
  std::vector<double> w1, b1, w2, b2;
  SparseRowGradients embeddings;

  void Reset(uint32_t bucket_count, int dim) {
    w1.assign(static_cast<size_t>(kHiddenSize) * dim, 0.0);
    b1.assign(kHiddenSize, 0.0);
    w2.assign(static_cast<size_t>(kNumOutputs) * kHiddenSize, 0.0);
    b2.assign(kNumOutputs, 0.0);
    embeddings.Reset(bucket_count, dim);
  }
  void Clear() {
    std::fill(w1.begin(), w1.end(), 0.0);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(w2.begin(), w2.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
    embeddings.Clear();
  }
};

// Adds scale * d(loss)/d(params) for one sample to `grads` and returns the
// sample's loss. The per-sample embedding contribution is formed before it
// is added, so a duplicated sample contributes exactly twice.
template <typename T>
double AccumulateGradients(const NetworkParams<T>& net,
                           const SparseFeatures& features, const Targets& y,
                           double scale, Activations& act, Gradients& grads) {
  ForwardPass(net, features, act);
  const int dim = net.dim;
  std::array<double, kNumOutputs> dz;
  for (int k = 0; k < kNumOutputs; ++k) {
    dz[k] = scale * (act.probs[k] - y[k]) / kNumOutputs;
    grads.b2[k] += dz[k];
    double* g = &grads.w2[static_cast<size_t>(k) * kHiddenSize];
    for (int j = 0; j < kHiddenSize; ++j) g[j] += dz[k] * act.hidden[j];
  }
  std::array<double, kHiddenSize> da1;
  for (int j = 0; j < kHiddenSize; ++j) {
    double dh = 0.0;
    for (int k = 0; k < kNumOutputs; ++k) {
      dh += net.w2[static_cast<size_t>(k) * kHiddenSize + j] * dz[k];
    }
    da1[j] = act.pre_hidden[j] > 0.0 ? dh : 0.0;
    grads.b1[j] += da1[j];
    double* g = &grads.w1[static_cast<size_t>(j) * dim];
    for (int d = 0; d < dim; ++d) g[d] += da1[j] * act.embedding[d];
  }
  if (features.total > 0) {
    std::vector<double> de(dim, 0.0);
    for (int j = 0; j < kHiddenSize; ++j) {
      if (da1[j] == 0.0) continue;
      const T* row = &net.w1[static_cast<size_t>(j) * dim];
      for (int d = 0; d < dim; ++d) de[d] += row[d] * da1[j];
    }
    const double inv = 1.0 / features.total;
    for (size_t i = 0; i < features.ids.size(); ++i) {
      const double w = features.counts[i] * inv;
      double* g = grads.embeddings.Row(features.ids[i]);
      for (int d = 0; d < dim; ++d) g[d] += w * de[d];
    }
  }
  return BceLoss(act.logits, y);
}

}  // namespace nordlid

#endif  // NORDLID_NETWORK_H_
