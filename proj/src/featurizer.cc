#include "nordlid/featurizer.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nordlid {

FeaturizerConfig FeaturizerConfig::PaperHead() {
  FeaturizerConfig cfg;
  cfg.embed_dim = 322;
  return cfg;
}

void FeaturizerConfig::Validate() const {
  if (min_n < 1 || min_n > max_n || max_n > 8) {
    throw std::invalid_argument("n-gram range must satisfy 1 <= min_n <= max_n <= 8");
  }
  if (bucket_count == 0 || (bucket_count & (bucket_count - 1)) != 0) {
    throw std::invalid_argument("bucket_count must be a power of two");
  }
  if (embed_dim < 1) throw std::invalid_argument("embed_dim must be >= 1");
}

namespace {

void EmitToken(std::string& wrapped, std::vector<int32_t>& offsets,
               const FeaturizerConfig& cfg, std::vector<uint32_t>& out) {
  // offsets[i] is the byte offset of code point i; offsets.back() == size.
  const int cps = static_cast<int>(offsets.size()) - 1;
  const uint64_t mask = cfg.bucket_count - 1;
  std::string_view view(wrapped);
  for (int n = cfg.min_n; n <= cfg.max_n && n <= cps; ++n) {
    for (int i = 0; i + n <= cps; ++i) {
      const auto gram = view.substr(offsets[i], offsets[i + n] - offsets[i]);
      out.push_back(static_cast<uint32_t>(Fnv1a64(gram) & mask));
    }
  }
  if (cfg.include_word_unigrams) {
    out.push_back(static_cast<uint32_t>(Fnv1a64(view) & mask));
  }
}

}  // namespace

std::vector<uint32_t> Featurize(std::string_view text,
                                const FeaturizerConfig& cfg) {
  std::vector<uint32_t> out;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());

  std::string wrapped;
  std::vector<int32_t> offsets;
  auto start_token = [&] {
    wrapped.assign("<");
    offsets.assign({0});
  };
  auto finish_token = [&] {
    offsets.push_back(static_cast<int32_t>(wrapped.size()));
    wrapped.push_back('>');
    offsets.push_back(static_cast<int32_t>(wrapped.size()));
    EmitToken(wrapped, offsets, cfg, out);
  };

  bool in_token = false;
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool space = c >= 0 && u_isUWhiteSpace(c);
    if (space) {
      if (in_token) finish_token();
      in_token = false;
      continue;
    }
    if (!in_token) {
      start_token();
      in_token = true;
    }
    offsets.push_back(static_cast<int32_t>(wrapped.size()));
    wrapped.append(text.substr(begin, i - begin));
  }
  if (in_token) finish_token();
  return out;
}

SparseFeatures Compact(std::vector<uint32_t> ids) {
  SparseFeatures f;
  f.total = static_cast<uint32_t>(ids.size());
  std::sort(ids.begin(), ids.end());
  for (size_t i = 0; i < ids.size();) {
    size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    f.ids.push_back(ids[i]);
    f.counts.push_back(static_cast<uint32_t>(j - i));
    i = j;
  }
  return f;
}

}  // namespace nordlid
