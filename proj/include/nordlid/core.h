// Shared domain types: languages, label sets, labeled sentences and datasets.

#ifndef NORDLID_CORE_H_
#define NORDLID_CORE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nordlid {

// Raised when input data violates a domain invariant. Carries optional
// file/line context so the CLI can point at the offending record.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class Language : uint8_t { kDa = 0, kNb = 1, kNn = 2, kSv = 3, kOther = 4 };

inline constexpr int kNumLanguages = 5;
inline constexpr int kNumScandinavian = 4;

// Output order of the classifier and canonical serialization order.
inline constexpr std::array<Language, kNumLanguages> kAllLanguages = {
    Language::kDa, Language::kNb, Language::kNn, Language::kSv,
    Language::kOther};
inline constexpr std::array<Language, kNumScandinavian> kScandinavian = {
    Language::kDa, Language::kNb, Language::kNn, Language::kSv};

constexpr int Index(Language lang) { return static_cast<int>(lang); }

std::string_view LanguageTag(Language lang);

// Throws DataError for anything but the five lowercase tags.
Language ParseLanguage(std::string_view tag);

// A non-empty set of languages where `other` never co-occurs with a
// Scandinavian language. Stored as a bitmask; iteration is canonical order.
class LabelSet {
 public:
  // Validating constructors. Duplicates are collapsed.
  static LabelSet Of(std::initializer_list<Language> langs);
  static LabelSet FromLanguages(std::span<const Language> langs);
  static LabelSet Parse(std::span<const std::string> tags);
  // Comma-separated form, e.g. "da,nb".
  static LabelSet ParseString(std::string_view joined);
  // Throws DataError if `bits` is not a valid set.
  static LabelSet FromBits(uint8_t bits);

  static LabelSet Other() { return LabelSet(kOtherBit); }

  bool Contains(Language lang) const { return (bits_ >> Index(lang)) & 1u; }
  bool IsOther() const { return bits_ == kOtherBit; }
  int size() const;
  uint8_t bits() const { return bits_; }

  // Returns a copy with `lang` added. Adding anything to {other}, or adding
  // `other` to a Scandinavian set, throws.
  LabelSet With(Language lang) const;
  bool IsSupersetOf(const LabelSet& other) const {
    return (bits_ & other.bits_) == other.bits_;
  }

  std::vector<Language> Languages() const;
  std::vector<std::string> Tags() const;
  std::string ToString() const;

  friend bool operator==(LabelSet a, LabelSet b) { return a.bits_ == b.bits_; }

 private:
  static constexpr uint8_t kOtherBit = 1u << 4;
  explicit LabelSet(uint8_t bits) : bits_(bits) {}
  uint8_t bits_;
};

struct LabeledSentence {
  std::string text;
  LabelSet labels;
  std::optional<std::string> source;

  friend bool operator==(const LabeledSentence&,
                         const LabeledSentence&) = default;
};

// Throws DataError when the text is blank.
void ValidateSentence(const LabeledSentence& sentence);

enum class Split : uint8_t { kTrain, kValidation, kTest, kUnsplit };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct Dataset {
  Split split = Split::kUnsplit;
  std::vector<LabeledSentence> items;

  size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Trims ASCII and Unicode whitespace from both ends.
std::string_view TrimWhitespace(std::string_view text);

}  // namespace nordlid

#endif  // NORDLID_CORE_H_
