// Brute-force metric reference built on std::set<std::string> label tags,
// sharing nothing with the library's bitmask arithmetic.

#ifndef NORDLID_TESTS_SUPPORT_METRIC_ORACLE_H_
#define NORDLID_TESTS_SUPPORT_METRIC_ORACLE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nordlid/core.h"
#include "nordlid/random.h"

namespace nordlid::testing {

using TagSet = std::set<std::string>;

struct OraclePair {
  TagSet predicted;
  TagSet gold;
};

struct OracleF1 {
  double precision = 0, recall = 0;
  bool defined = false;
  double f1 = 0;
};

inline const std::vector<std::string>& OracleTags() {
  static const std::vector<std::string> tags = {"da", "nb", "nn", "sv", "other"};
  return tags;
}

inline TagSet ToTags(LabelSet s) {
  const auto v = s.Tags();
  return TagSet(v.begin(), v.end());
}

inline double OracleExact(const std::vector<OraclePair>& pairs) {
  double hits = 0;
  for (const auto& p : pairs) hits += p.predicted == p.gold ? 1 : 0;
  return pairs.empty() ? 0 : hits / pairs.size();
}

// `top1` holds one tag per pair.
inline double OracleLoose(const std::vector<OraclePair>& pairs,
                          const std::vector<std::string>& top1) {
  double hits = 0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    hits += pairs[i].gold.count(top1[i]) ? 1 : 0;
  }
  return pairs.empty() ? 0 : hits / pairs.size();
}

inline std::map<std::string, OracleF1> OraclePerLanguage(
    const std::vector<OraclePair>& pairs) {
  std::map<std::string, OracleF1> out;
  for (const auto& tag : OracleTags()) {
    double tp = 0, fp = 0, fn = 0;
    for (const auto& p : pairs) {
      const bool in_p = p.predicted.count(tag) > 0;
      const bool in_g = p.gold.count(tag) > 0;
      if (in_p && in_g) tp += 1;
      if (in_p && !in_g) fp += 1;
      if (!in_p && in_g) fn += 1;
    }
    OracleF1 r;
    r.precision = tp + fp > 0 ? tp / (tp + fp) : 0;
    r.recall = tp + fn > 0 ? tp / (tp + fn) : 0;
    r.defined = tp + fp + fn > 0;
    if (r.defined) {
      r.f1 = r.precision + r.recall > 0
                 ? 2 * r.precision * r.recall / (r.precision + r.recall)
                 : 0;
    }
    out[tag] = r;
  }
  return out;
}

// A random valid label set: {other} or a non-empty subset of the four.
inline LabelSet RandomLabelSet(Rng& rng) {
  if (rng.Below(5) == 0) return LabelSet::Other();
  return LabelSet::FromBits(static_cast<uint8_t>(1 + rng.Below(15)));
}

}  // namespace nordlid::testing

#endif  // NORDLID_TESTS_SUPPORT_METRIC_ORACLE_H_
