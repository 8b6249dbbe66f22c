// Multi-label extension by the unchanged-translation rule: if translating a
// sentence into another Scandinavian language leaves it unchanged, the
// sentence is also valid in that language.

#ifndef NORDLID_SILVERLABEL_H_
#define NORDLID_SILVERLABEL_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nordlid/core.h"

namespace nordlid {

struct TranslationRecord {
  size_t item_index = 0;
  Language target = Language::kDa;  // never kOther
  std::string translation;
};

std::vector<TranslationRecord> ReadTranslations(std::istream& in,
                                                const std::string& name);
std::vector<TranslationRecord> ReadTranslations(
    const std::filesystem::path& path);
std::string ToJsonLine(const TranslationRecord& record);

// NFC composition, trimming, and collapsing internal whitespace runs to one
// space. Case and punctuation are preserved.
std::string CanonicalForm(std::string_view text);

// True iff both strings have the same CanonicalForm.
bool CanonicalCompare(std::string_view a, std::string_view b);

struct SilverSummary {
  size_t records_seen = 0;
  size_t unchanged = 0;  // translations equal to their source
  size_t skipped_other = 0;
  std::array<size_t, kNumScandinavian> added{};  // labels newly added
  size_t failed = 0;  // translator failures, filled in by the CLI

  size_t TotalAdded() const;
  std::string ToJson() const;
};

struct SilverResult {
  Dataset dataset;
  SilverSummary summary;
};

// Adds `target` to an item's labels whenever its translation is unchanged.
// Never removes labels, never touches {other} items, never rewrites text.
// Throws DataError for out-of-range indices or records targeting `other`.
SilverResult ExtendLabels(const Dataset& dataset,
                          std::span<const TranslationRecord> records);

// Runs `command` through /bin/sh, writing "<target>\t<text>\n" to its stdin
// and returning the first line of its stdout. nullopt on non-zero exit.
std::optional<std::string> RunTranslatorCommand(const std::string& command,
                                                Language target,
                                                std::string_view text);

}  // namespace nordlid

#endif  // NORDLID_SILVERLABEL_H_
