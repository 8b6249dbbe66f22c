// Deterministic text canonicalization: URL / e-mail / number placeholders and
// locale-independent lowercasing.
//
// Pattern definitions (byte level, W = [A-Za-z0-9_] or any non-ASCII byte):
//
//   URL    (?<!W) (https?://|www\.) \S+            -- prefix case-insensitive
//   mail   (?<![A-Za-z0-9._%+-]|non-ASCII) [A-Za-z0-9._%+-]+ @ [A-Za-z0-9-]+
//          (\.[A-Za-z0-9-]+)* \.[A-Za-z]{2,} (?![A-Za-z0-9-]|non-ASCII)
//   number (?<!W) [+-]? \d+ ([ .,]\d+)* (?!W)     -- matched atomically
//
// Alternatives are tried in that order at each position, leftmost first,
// and the pass is repeated until the text stops changing.
// Numbers glued to letters ("B52", "3km") are left alone.

#ifndef NORDLID_NORMALIZE_H_
#define NORDLID_NORMALIZE_H_

#include <string>
#include <string_view>

namespace nordlid {

struct NormalizeConfig {
  bool replace_urls = true;
  bool replace_emails = true;
  bool replace_numbers = true;
  bool lowercase = true;
  // Write <URL>/<mail>/<num> instead of the angle-bracket glyphs.
  bool ascii_placeholders = false;

  static NormalizeConfig Training() { return {}; }
  static NormalizeConfig Raw() { return {false, false, false, false, false}; }

  bool IsIdentity() const {
    return !replace_urls && !replace_emails && !replace_numbers && !lowercase;
  }
  friend bool operator==(const NormalizeConfig&,
                         const NormalizeConfig&) = default;
};

inline constexpr std::string_view kUrlPlaceholder = "⟨URL⟩";
inline constexpr std::string_view kMailPlaceholder = "⟨mail⟩";
inline constexpr std::string_view kNumPlaceholder = "⟨num⟩";
inline constexpr std::string_view kUrlPlaceholderAscii = "<URL>";
inline constexpr std::string_view kMailPlaceholderAscii = "<mail>";
inline constexpr std::string_view kNumPlaceholderAscii = "<num>";

// Replaces URLs, e-mail addresses and numbers per `cfg`. Ignores
// cfg.lowercase. Idempotent.
std::string NormalizeRegex(std::string_view text, const NormalizeConfig& cfg);

// Unicode simple lowercase mapping per code point; no locale.
std::string Lowercase(std::string_view text);

// Lowercasing (if enabled) followed by regex replacement. Placeholders are
// never lowercased, so Normalize is idempotent.
std::string Normalize(std::string_view text, const NormalizeConfig& cfg);

}  // namespace nordlid

#endif  // NORDLID_NORMALIZE_H_
