// Hashed character n-gram features.
//
// Text is split on whitespace; each token is wrapped as "<token>" and every
// code-point n-gram of the wrapped token with min_n <= n <= max_n is hashed
// with 64-bit FNV-1a over its UTF-8 bytes, bucket = hash % bucket_count. With
// include_word_unigrams the whole wrapped token is hashed as well.

#ifndef NORDLID_FEATURIZER_H_
#define NORDLID_FEATURIZER_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace nordlid {

struct FeaturizerConfig {
  int min_n = 1;
  int max_n = 4;
  uint32_t bucket_count = 1u << 18;
  bool include_word_unigrams = true;
  int embed_dim = 32;

  // embed_dim 322: a 20,932-parameter head (64*322 + 64 + 4*64 + 4).
  static FeaturizerConfig PaperHead();

  // Throws std::invalid_argument on a bad configuration.
  void Validate() const;
  friend bool operator==(const FeaturizerConfig&,
                         const FeaturizerConfig&) = default;
};

constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = kFnvOffsetBasis;
  for (char c : bytes) {
    h ^= static_cast<uint8_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

// Bucket ids in generation order (a multiset; repeats are kept).
std::vector<uint32_t> Featurize(std::string_view text,
                                const FeaturizerConfig& cfg);

// The same multiset as sorted unique ids with multiplicities.
struct SparseFeatures {
  std::vector<uint32_t> ids;
  std::vector<uint32_t> counts;
  uint32_t total = 0;

  bool empty() const { return total == 0; }
};

SparseFeatures Compact(std::vector<uint32_t> ids);

inline SparseFeatures FeaturizeSparse(std::string_view text,
                                      const FeaturizerConfig& cfg) {
  return Compact(Featurize(text, cfg));
}

}  // namespace nordlid

#endif  // NORDLID_FEATURIZER_H_
