// Small UTF-8 helpers on top of ICU's code point macros.

#ifndef NORDLID_UTF8_H_
#define NORDLID_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nordlid::utf8 {

// Byte offset of the first ill-formed sequence, or nullopt if `text` is
// well-formed UTF-8.
std::optional<size_t> FindInvalid(std::string_view text);

inline bool IsValid(std::string_view text) {
  return !FindInvalid(text).has_value();
}

// Requires valid UTF-8.
std::u32string Decode(std::string_view text);
void AppendCodePoint(char32_t cp, std::string& out);
std::string Encode(std::u32string_view cps);

// True if `offset` is 0, text.size(), or the start of a code point.
bool IsBoundary(std::string_view text, size_t offset);

bool IsWhitespace(char32_t cp);

}  // namespace nordlid::utf8

#endif  // NORDLID_UTF8_H_
