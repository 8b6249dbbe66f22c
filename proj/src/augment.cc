#include "nordlid/augment.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>

#include "json.hpp"
#include "nordlid/normalize.h"
#include "nordlid/random.h"
#include "nordlid/utf8.h"

namespace nordlid {

namespace {

void RefuseTestSplit(const Dataset& dataset, std::string_view op) {
  if (dataset.split == Split::kTest) {
    throw DataError(std::string(op) + " refuses to modify a test split");
  }
}

// Draw slots for punctuation augmentation.
enum PunctDraw : uint64_t { kSelect = 0, kSite = 1, kMark = 2, kSpace = 3 };

}  // namespace

void PunctConfig::Validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw DataError("punctuation rate must lie in [0, 1]");
  }
  if (!(space_prob >= 0.0 && space_prob <= 1.0)) {
    throw DataError("space probability must lie in [0, 1]");
  }
  if (end_marks.empty() || start_marks.empty()) {
    throw DataError("punctuation mark sets must be non-empty");
  }
}

Dataset PunctuationAugment(const Dataset& dataset, const PunctConfig& cfg,
                           PunctSummary* summary) {
  RefuseTestSplit(dataset, "punctuation augmentation");
  cfg.Validate();
  const CounterRng rng(cfg.seed);
  Dataset out = dataset;
  PunctSummary local;
  for (size_t i = 0; i < out.items.size(); ++i) {
    auto& item = out.items[i];
    if (item.labels.IsOther()) continue;
    ++local.eligible;
    if (rng.Uniform(i, kSelect) >= cfg.rate) continue;
    ++local.augmented;
    const bool at_end = rng.Uniform(i, kSite) < 0.5;
    const auto& marks = at_end ? cfg.end_marks : cfg.start_marks;
    const std::string& mark = marks[rng.Below(i, kMark, marks.size())];
    const bool spaced = rng.Uniform(i, kSpace) < cfg.space_prob;
    if (at_end) {
      item.text = item.text + (spaced ? " " : "") + mark;
    } else {
      item.text = mark + (spaced ? " " : "") + item.text;
    }
  }
  if (summary) *summary = local;
  return out;
}

Dataset ExtractAlphabetVariants(std::span<const std::string> sentences,
                                std::u32string_view letters, LabelSet label,
                                Split split) {
  if (letters.empty()) throw DataError("letter set must be non-empty");
  const std::u32string wanted =
      utf8::Decode(Lowercase(utf8::Encode(letters)));
  Dataset out;
  out.split = split;
  for (const auto& sentence : sentences) {
    const std::u32string cps = utf8::Decode(Lowercase(sentence));
    const bool hit = std::any_of(cps.begin(), cps.end(), [&](char32_t c) {
      return wanted.find(c) != std::u32string::npos;
    });
    if (hit) out.items.push_back({sentence, label, std::nullopt});
  }
  return out;
}

std::string_view EntityCategoryName(EntityCategory category) {
  switch (category) {
    case EntityCategory::kPerson:
      return "person";
    case EntityCategory::kOrganization:
      return "organization";
    case EntityCategory::kLocation:
      return "location";
    case EntityCategory::kMisc:
      return "misc";
  }
  return "misc";
}

EntityCategory ParseEntityCategory(std::string_view name) {
  std::string lower = Lowercase(name);
  if (lower == "person" || lower == "per") return EntityCategory::kPerson;
  if (lower == "organization" || lower == "org") {
    return EntityCategory::kOrganization;
  }
  if (lower == "location" || lower == "loc") return EntityCategory::kLocation;
  if (lower == "misc") return EntityCategory::kMisc;
  throw DataError("unknown entity category '" + std::string(name) + "'");
}

std::vector<EntityAnnotation> ReadAnnotations(std::istream& in,
                                              const std::string& name) {
  std::vector<EntityAnnotation> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (TrimWhitespace(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      EntityAnnotation a;
      a.sentence_index = j.at("sentence_index").get<size_t>();
      a.start = j.at("start").get<size_t>();
      a.end = j.at("end").get<size_t>();
      a.category = ParseEntityCategory(j.at("category").get<std::string>());
      a.surface = j.at("surface").get<std::string>();
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(name + ":" + std::to_string(line_no) +
                      ": malformed annotation: " + e.what());
    } catch (const DataError& e) {
      throw DataError(name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<EntityAnnotation> ReadAnnotations(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return ReadAnnotations(in, path.string());
}

Dataset NerSwap(const Dataset& dataset,
                std::span<const EntityAnnotation> annotations, uint64_t seed) {
  RefuseTestSplit(dataset, "named-entity swapping");

  std::array<std::vector<std::string>, 4> inventory;
  std::map<size_t, std::vector<const EntityAnnotation*>> by_sentence;
  for (const auto& a : annotations) {
    const std::string where = "annotation for sentence " +
                              std::to_string(a.sentence_index) + " [" +
                              std::to_string(a.start) + ", " +
                              std::to_string(a.end) + ")";
    if (a.sentence_index >= dataset.size()) {
      throw DataError(where + ": sentence index out of range");
    }
    const std::string& text = dataset.items[a.sentence_index].text;
    if (a.start >= a.end || a.end > text.size()) {
      throw DataError(where + ": span out of bounds");
    }
    if (!utf8::IsBoundary(text, a.start) || !utf8::IsBoundary(text, a.end)) {
      throw DataError(where + ": span splits a UTF-8 sequence");
    }
    if (text.compare(a.start, a.end - a.start, a.surface) != 0) {
      throw DataError(where + ": surface '" + a.surface +
                      "' does not match the text");
    }
    auto& inv = inventory[static_cast<size_t>(a.category)];
    if (std::find(inv.begin(), inv.end(), a.surface) == inv.end()) {
      inv.push_back(a.surface);
    }
    by_sentence[a.sentence_index].push_back(&a);
  }

  const CounterRng rng(seed);
  Dataset out = dataset;
  for (auto& [index, mentions] : by_sentence) {
    std::sort(mentions.begin(), mentions.end(),
              [](const EntityAnnotation* x, const EntityAnnotation* y) {
                return x->start < y->start;
              });
    for (size_t k = 1; k < mentions.size(); ++k) {
      if (mentions[k]->start < mentions[k - 1]->end) {
        throw DataError("overlapping entity spans in sentence " +
                        std::to_string(index));
      }
    }
    const std::string& text = dataset.items[index].text;
    std::string rewritten;
    size_t cursor = 0;
    for (size_t k = 0; k < mentions.size(); ++k) {
      const auto& a = *mentions[k];
      const auto& inv = inventory[static_cast<size_t>(a.category)];
      rewritten.append(text, cursor, a.start - cursor);
      rewritten += inv[rng.Below(index, k, inv.size())];
      cursor = a.end;
    }
    rewritten.append(text, cursor, std::string::npos);
    out.items[index].text = std::move(rewritten);
  }
  return out;
}

}  // namespace nordlid
