#include "nordlid/normalize.h"

#include <unicode/uchar.h>

#include <array>
#include <boost/regex.hpp>

#include "nordlid/utf8.h"

namespace nordlid {

namespace {

// Word characters for boundary checks; every non-ASCII byte counts, which
// also covers the placeholder brackets and letters such as æ, ø, å.
constexpr char kWordClass[] = "[A-Za-z0-9_\\x80-\\xFF]";

std::string UrlPattern() {
  return std::string("(?<!") + kWordClass +
         ")(?i:https?://|www\\.)[^\\s]+";
}

std::string MailPattern() {
  return "(?<![A-Za-z0-9._%+\\-\\x80-\\xFF])[A-Za-z0-9._%+\\-]+@"
         "[A-Za-z0-9\\-]+(?:\\.[A-Za-z0-9\\-]+)*\\.[A-Za-z]{2,}"
         "(?![A-Za-z0-9\\-\\x80-\\xFF])";
}

std::string NumberPattern() {
  return std::string("(?<!") + kWordClass +
         ")(?>[+\\-]?[0-9]+(?:[ .,][0-9]+)*)(?!" + kWordClass + ")";
}

enum Group { kUrlGroup = 1, kMailGroup = 2, kNumGroup = 3 };

// One compiled alternation per combination of enabled patterns. Disabled
// alternatives become a never-matching group so group numbers stay fixed.
const boost::regex& PatternFor(bool urls, bool emails, bool numbers) {
  static const std::array<boost::regex, 8> patterns = [] {
    std::array<boost::regex, 8> out;
    const std::string never = "(?!)";
    for (int mask = 0; mask < 8; ++mask) {
      std::string p = "(" + ((mask & 1) ? UrlPattern() : never) + ")|(" +
                      ((mask & 2) ? MailPattern() : never) + ")|(" +
                      ((mask & 4) ? NumberPattern() : never) + ")";
      out[mask] = boost::regex(p, boost::regex::perl);
    }
    return out;
  }();
  return patterns[(urls ? 1 : 0) | (emails ? 2 : 0) | (numbers ? 4 : 0)];
}

std::string ReplaceOnce(std::string_view text, const NormalizeConfig& cfg) {
  const boost::regex& re =
      PatternFor(cfg.replace_urls, cfg.replace_emails, cfg.replace_numbers);
  const bool ascii = cfg.ascii_placeholders;
  std::string out;
  out.reserve(text.size());
  auto last = text.begin();
  boost::regex_iterator<std::string_view::const_iterator> it(text.begin(),
                                                             text.end(), re);
  for (; it != decltype(it)(); ++it) {
    const auto& m = *it;
    out.append(last, m[0].first);
    if (m[kUrlGroup].matched) {
      out += ascii ? kUrlPlaceholderAscii : kUrlPlaceholder;
    } else if (m[kMailGroup].matched) {
      out += ascii ? kMailPlaceholderAscii : kMailPlaceholder;
    } else {
      out += ascii ? kNumPlaceholderAscii : kNumPlaceholder;
    }
    last = m[0].second;
  }
  out.append(last, text.end());
  return out;
}

constexpr std::array<std::string_view, 6> kPlaceholders = {
    kUrlPlaceholder,      kMailPlaceholder,      kNumPlaceholder,
    kUrlPlaceholderAscii, kMailPlaceholderAscii, kNumPlaceholderAscii};

// Lowercases everything except placeholder tokens.
std::string LowercaseKeepingPlaceholders(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t begin = 0;
  size_t i = 0;
  while (i < text.size()) {
    size_t matched = 0;
    if (text[i] == '<' || text[i] == '\xe2') {
      for (auto p : kPlaceholders) {
        if (text.substr(i, p.size()) == p) {
          matched = p.size();
          break;
        }
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    out += Lowercase(text.substr(begin, i - begin));
    out.append(text.substr(i, matched));
    i += matched;
    begin = i;
  }
  out += Lowercase(text.substr(begin));
  return out;
}

}  // namespace

std::string NormalizeRegex(std::string_view text, const NormalizeConfig& cfg) {
  std::string out(text);
  if (!cfg.replace_urls && !cfg.replace_emails && !cfg.replace_numbers) {
    return out;
  }
  // A replacement can change what its neighbours look like ("1,5a@b.no"
  // becomes "1,<mail>", where "1" now stands alone), so repeat until nothing
  // changes. Every replacement removes a digit, an '@' or a URL prefix and
  // placeholders contain none, so this terminates.
  for (;;) {
    std::string next = ReplaceOnce(out, cfg);
    if (next == out) return out;
    out = std::move(next);
  }
}

std::string Lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      // Pass ill-formed bytes through untouched.
      out.append(text.substr(start, i - start));
      continue;
    }
    if (c < 0x80) {
      out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
    } else {
      utf8::AppendCodePoint(static_cast<char32_t>(u_tolower(c)), out);
    }
  }
  return out;
}

std::string Normalize(std::string_view text, const NormalizeConfig& cfg) {
  if (cfg.lowercase) {
    return NormalizeRegex(LowercaseKeepingPlaceholders(text), cfg);
  }
  return NormalizeRegex(text, cfg);
}

}  // namespace nordlid
