#include "nordlid/core.h"

#include <bit>

#include "nordlid/utf8.h"

namespace nordlid {

namespace {

constexpr std::array<std::string_view, kNumLanguages> kTags = {
    "da", "nb", "nn", "sv", "other"};

}  // namespace

std::string_view LanguageTag(Language lang) { return kTags[Index(lang)]; }

Language ParseLanguage(std::string_view tag) {
  for (Language lang : kAllLanguages) {
    if (kTags[Index(lang)] == tag) return lang;
  }
  throw DataError("unknown language tag '" + std::string(tag) +
                  "' (expected one of da, nb, nn, sv, other)");
}

LabelSet LabelSet::FromBits(uint8_t bits) {
  if (bits == 0) throw DataError("label set is empty");
  if (bits >= (1u << kNumLanguages)) {
    throw DataError("label set has out-of-range bits");
  }
  if ((bits & kOtherBit) && bits != kOtherBit) {
    throw DataError(
        "label 'other' is exclusive and cannot be combined with a "
        "Scandinavian language");
  }
  return LabelSet(bits);
}

LabelSet LabelSet::FromLanguages(std::span<const Language> langs) {
  uint8_t bits = 0;
  for (Language lang : langs) bits |= static_cast<uint8_t>(1u << Index(lang));
  return FromBits(bits);
}

LabelSet LabelSet::Of(std::initializer_list<Language> langs) {
  return FromLanguages(std::span<const Language>(langs.begin(), langs.size()));
}

LabelSet LabelSet::Parse(std::span<const std::string> tags) {
  std::vector<Language> langs;
  langs.reserve(tags.size());
  for (const auto& tag : tags) langs.push_back(ParseLanguage(tag));
  return FromLanguages(langs);
}

LabelSet LabelSet::ParseString(std::string_view joined) {
  std::vector<std::string> tags;
  size_t start = 0;
  while (start <= joined.size()) {
    size_t comma = joined.find(',', start);
    if (comma == std::string_view::npos) comma = joined.size();
    std::string_view tag = TrimWhitespace(joined.substr(start, comma - start));
    if (!tag.empty()) tags.emplace_back(tag);
    start = comma + 1;
  }
  return Parse(tags);
}

int LabelSet::size() const { return std::popcount(bits_); }

LabelSet LabelSet::With(Language lang) const {
  return FromBits(static_cast<uint8_t>(bits_ | (1u << Index(lang))));
}

std::vector<Language> LabelSet::Languages() const {
  std::vector<Language> out;
  for (Language lang : kAllLanguages) {
    if (Contains(lang)) out.push_back(lang);
  }
  return out;
}

std::vector<std::string> LabelSet::Tags() const {
  std::vector<std::string> out;
  for (Language lang : Languages()) out.emplace_back(LanguageTag(lang));
  return out;
}

std::string LabelSet::ToString() const {
  std::string out;
  for (Language lang : Languages()) {
    if (!out.empty()) out += ',';
    out += LanguageTag(lang);
  }
  return out;
}

void ValidateSentence(const LabeledSentence& sentence) {
  if (auto bad = utf8::FindInvalid(sentence.text)) {
    throw DataError("sentence text is not valid UTF-8 (byte " +
                    std::to_string(*bad) + ")");
  }
  if (TrimWhitespace(sentence.text).empty()) {
    throw DataError("sentence text is empty after trimming whitespace");
  }
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
    case Split::kUnsplit:
      return "unsplit";
  }
  return "unsplit";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "dev") return Split::kValidation;
  if (name == "test") return Split::kTest;
  if (name == "unsplit") return Split::kUnsplit;
  throw DataError("unknown split '" + std::string(name) + "'");
}

std::string_view TrimWhitespace(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  // Walk code points from the front.
  while (begin < end) {
    size_t next = begin + 1;
    while (next < end && !utf8::IsBoundary(text, next)) ++next;
    std::u32string cp = utf8::Decode(text.substr(begin, next - begin));
    if (cp.size() != 1 || !utf8::IsWhitespace(cp[0])) break;
    begin = next;
  }
  while (end > begin) {
    size_t prev = end - 1;
    while (prev > begin && !utf8::IsBoundary(text, prev)) --prev;
    std::u32string cp = utf8::Decode(text.substr(prev, end - prev));
    if (cp.size() != 1 || !utf8::IsWhitespace(cp[0])) break;
    end = prev;
  }
  return text.substr(begin, end - begin);
}

}  // namespace nordlid
