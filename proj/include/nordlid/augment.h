// Training-data augmentation: random punctuation, alphabet-variation
// harvesting and named-entity swapping. All randomness is keyed by
// (seed, item index) so results do not depend on processing order.

#ifndef NORDLID_AUGMENT_H_
#define NORDLID_AUGMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nordlid/core.h"

namespace nordlid {

struct PunctConfig {
  double rate = 0.075;
  std::vector<std::string> end_marks = {".", "!", "?"};
  // Hyphen-minus, en dash, comma.
  std::vector<std::string> start_marks = {"-", "–", ","};
  double space_prob = 1.0 / 3.0;
  uint64_t seed = 0;

  // Throws DataError if a probability is outside [0, 1] or a mark set is
  // empty.
  void Validate() const;
};

struct PunctSummary {
  size_t eligible = 0;
  size_t augmented = 0;
};

// Each non-{other} item is selected with probability `rate`; a selected item
// gets exactly one end mark appended or one start mark prepended (fair coin),
// separated by a space with probability `space_prob`. Everything else is
// copied byte for byte. Refuses test splits.
Dataset PunctuationAugment(const Dataset& dataset, const PunctConfig& cfg,
                           PunctSummary* summary = nullptr);

// Keeps the sentences containing at least one of `letters`
// (case-insensitive), each labeled `label`, in input order.
Dataset ExtractAlphabetVariants(std::span<const std::string> sentences,
                                std::u32string_view letters, LabelSet label,
                                Split split = Split::kTrain);

enum class EntityCategory : uint8_t {
  kPerson,
  kOrganization,
  kLocation,
  kMisc
};

std::string_view EntityCategoryName(EntityCategory category);
EntityCategory ParseEntityCategory(std::string_view name);

// Byte span [start, end) of one entity mention in a dataset item.
struct EntityAnnotation {
  size_t sentence_index = 0;
  size_t start = 0;
  size_t end = 0;
  EntityCategory category = EntityCategory::kMisc;
  std::string surface;
};

// JSONL records {sentence_index, start, end, category, surface}.
std::vector<EntityAnnotation> ReadAnnotations(std::istream& in,
                                              const std::string& name);
std::vector<EntityAnnotation> ReadAnnotations(
    const std::filesystem::path& path);

// Replaces every annotated mention with a surface drawn uniformly from the
// same category's inventory (the distinct surfaces of all annotations,
// possibly the original). Throws DataError for out-of-range or misaligned
// spans, surface mismatches and overlapping spans. Refuses test splits.
Dataset NerSwap(const Dataset& dataset,
                std::span<const EntityAnnotation> annotations, uint64_t seed);

}  // namespace nordlid

#endif  // NORDLID_AUGMENT_H_
