#pragma once

#include <string>
#include <string_view>

namespace vaxsent::detail {

inline constexpr char32_t kReplacement = 0xFFFD;

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode_utf8(std::string_view in);
void append_utf8(std::string& out, char32_t cp);

// Same set as Python's str.isspace().
bool is_unicode_space(char32_t cp);

inline bool is_ascii_alnum(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s);

}  // namespace vaxsent::detail
