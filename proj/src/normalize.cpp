#include "vaxsent/normalize.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "utf8.hpp"
#include "vaxsent/csv.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent::text {

namespace {

using detail::decode_utf8;

bool is_word_char(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

char32_t unify_quote(char32_t c) {
  return (c == 0x2018 || c == 0x2019 || c == 0x02BC) ? U'\'' : c;
}

bool is_word_underscore(char32_t c) { return detail::is_ascii_alnum(c) || c == '_'; }

// Lowercase ASCII; every character outside [a-z0-9'] and every apostrophe not
// between two word characters becomes a separator. Returns the words.
std::vector<std::string> clean_words(const std::u32string& s) {
  std::u32string mapped(s.size(), U' ');
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    if (c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    if (is_word_char(c) || c == '\'') mapped[i] = c;
  }
  std::vector<std::string> words;
  std::string current;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    char32_t c = mapped[i];
    if (c == '\'') {
      bool inner = i > 0 && i + 1 < mapped.size() && is_word_char(mapped[i - 1]) &&
                   is_word_char(mapped[i + 1]);
      if (!inner) c = U' ';
    }
    if (c == U' ') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(c));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::u32string unify_quotes(std::u32string s) {
  for (auto& c : s) c = unify_quote(c);
  return s;
}

bool is_word_token(const std::u32string& s) {
  if (s.empty() || !is_word_char(s.front()) || !is_word_char(s.back())) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_word_char(s[i])) continue;
    if (s[i] == '\'' && is_word_char(s[i - 1]) && is_word_char(s[i + 1])) continue;
    return false;
  }
  return true;
}

bool starts_with_ci(const std::u32string& s, std::size_t pos, std::u32string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char32_t c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    if (c != prefix[i]) return false;
  }
  return true;
}

// http://..., https://..., www.... up to the next whitespace.
std::u32string strip_urls(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t prefix = 0;
    if (starts_with_ci(s, i, U"https://")) {
      prefix = 8;
    } else if (starts_with_ci(s, i, U"http://")) {
      prefix = 7;
    } else if (starts_with_ci(s, i, U"www.")) {
      prefix = 4;
    }
    if (prefix && i + prefix < s.size() && !detail::is_unicode_space(s[i + prefix])) {
      std::size_t j = i + prefix;
      while (j < s.size() && !detail::is_unicode_space(s[j])) ++j;
      out.push_back(U' ');
      i = j;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::u32string strip_mentions(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '@' && i + 1 < s.size() && is_word_underscore(s[i + 1])) {
      std::size_t j = i + 1;
      while (j < s.size() && is_word_underscore(s[j])) ++j;
      out.push_back(U' ');
      i = j;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::u32string split_hashtags(std::u32string s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == '#' && is_word_underscore(s[i + 1])) s[i] = U' ';
  }
  return s;
}

constexpr std::array<std::string_view, 7> kStandardWords = {
    "omg", "tbh", "rt", "dm", "socialdistance", "fwiw", "covid19vax"};
// WHITE SMILING FACE, BLACK SMILING FACE, WHITE FROWNING FACE
constexpr std::array<char32_t, 3> kStandardSymbols = {0x263A, 0x263B, 0x2639};

}  // namespace

SubstitutionTable SubstitutionTable::from_entries(std::vector<Substitution> entries) {
  SubstitutionTable table;
  std::set<std::u32string> seen_symbols;
  for (const auto& e : entries) {
    auto pattern = unify_quotes(decode_utf8(detail::trim(e.pattern)));
    if (pattern.empty()) throw FormatError("empty substitution pattern");
    auto replacement = clean_words(unify_quotes(decode_utf8(e.replacement)));

    std::u32string lowered = pattern;
    for (auto& c : lowered) {
      if (c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    }
    if (is_word_token(lowered)) {
      std::string key;
      for (char32_t c : lowered) key.push_back(static_cast<char>(c));
      if (!table.words_.emplace(key, std::move(replacement)).second) {
        throw FormatError("duplicate substitution pattern '" + key + "'");
      }
      continue;
    }
    bool has_symbol = false;
    for (char32_t c : pattern) {
      if (detail::is_unicode_space(c)) {
        throw FormatError("substitution pattern '" + e.pattern + "' contains whitespace");
      }
      if (!detail::is_ascii_alnum(c) && c != '\'') has_symbol = true;
    }
    if (!has_symbol) {
      throw FormatError("substitution pattern '" + e.pattern +
                        "' is neither a word token nor a symbol sequence");
    }
    if (!seen_symbols.insert(pattern).second) {
      throw FormatError("duplicate substitution pattern '" + e.pattern + "'");
    }
    table.symbols_.push_back({std::move(pattern), std::move(replacement)});
  }

  auto check_words = [&](const std::vector<std::string>& words, const std::string& pattern) {
    for (const auto& w : words) {
      if (table.words_.contains(w)) {
        throw FormatError("replacement for '" + pattern + "' contains the pattern word '" + w + "'");
      }
    }
  };
  for (const auto& [key, words] : table.words_) check_words(words, key);
  for (const auto& rule : table.symbols_) check_words(rule.words, "symbol pattern");
  std::stable_sort(table.symbols_.begin(), table.symbols_.end(),
                   [](const SymbolRule& a, const SymbolRule& b) { return a.pattern.size() > b.pattern.size(); });
  table.entries_ = std::move(entries);
  return table;
}

SubstitutionTable SubstitutionTable::defaults() {
  return from_entries({
      {"omg", "oh my god"},
      {"tbh", "to be honest"},
      {"rt", "retweet"},
      {"dm", "direct message"},
      {"socialdistance", "social distance"},
      {"fwiw", "for what it’s worth"},
      {"covid19vax", "COVID-19 vaccine"},
      {"☺", "smile"},
      {"☻", "smile"},
      {"\U0001F60A", "smile"},
      {"\U0001F642", "smile"},
      {"\U0001F600", "smile"},
      {"\U0001F603", "smile"},
      {"\U0001F604", "smile"},
      {"\U0001F601", "smile"},
      {"☹", "sad"},
      {"\U0001F641", "sad"},
      {"\U0001F61E", "sad"},
      {"\U0001F622", "sad"},
  });
}

SubstitutionTable SubstitutionTable::load(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].fields != std::vector<std::string>{"pattern", "replacement"}) {
    throw FormatError(path.string() + ": expected header 'pattern,replacement'");
  }
  std::vector<Substitution> entries;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fields.size() != 2) {
      throw FormatError(path.string() + ":" + std::to_string(rows[i].line) + ": expected 2 fields");
    }
    entries.push_back({rows[i].fields[0], rows[i].fields[1]});
  }
  auto table = from_entries(std::move(entries));
  for (auto w : kStandardWords) {
    if (!table.word(w)) {
      throw FormatError(path.string() + ": missing standard pattern '" + std::string(w) + "'");
    }
  }
  for (char32_t cp : kStandardSymbols) {
    bool found = std::any_of(table.symbols_.begin(), table.symbols_.end(),
                             [&](const SymbolRule& r) { return r.pattern == std::u32string(1, cp); });
    if (!found) {
      std::string name;
      detail::append_utf8(name, cp);
      throw FormatError(path.string() + ": missing standard pattern '" + name + "'");
    }
  }
  return table;
}

const std::vector<std::string>* SubstitutionTable::word(std::string_view token) const {
  auto it = words_.find(std::string(token));
  return it == words_.end() ? nullptr : &it->second;
}

NormalizedText normalize(std::string_view raw, const SubstitutionTable& table) {
  auto s = unify_quotes(decode_utf8(raw));
  s = split_hashtags(strip_mentions(strip_urls(s)));

  const auto& symbols = table.symbols();
  if (!symbols.empty()) {
    std::u32string expanded;
    expanded.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
      const SubstitutionTable::SymbolRule* hit = nullptr;
      for (const auto& rule : symbols) {
        if (s.compare(i, rule.pattern.size(), rule.pattern) == 0) {
          hit = &rule;
          break;
        }
      }
      if (!hit) {
        expanded.push_back(s[i++]);
        continue;
      }
      expanded.push_back(U' ');
      for (const auto& w : hit->words) {
        expanded.append(w.begin(), w.end());
        expanded.push_back(U' ');
      }
      i += hit->pattern.size();
    }
    s = std::move(expanded);
  }

  NormalizedText out;
  auto append = [&](const std::string& w) {
    if (!out.text.empty()) out.text.push_back(' ');
    out.text += w;
    ++out.token_count;
  };
  for (const auto& token : clean_words(s)) {
    if (const auto* repl = table.word(token)) {
      for (const auto& w : *repl) append(w);
    } else {
      append(token);
    }
  }
  return out;
}

std::vector<std::string> tokenize(const NormalizedText& text) {
  std::vector<std::string> tokens;
  tokens.reserve(text.token_count);
  std::size_t start = 0;
  const auto& s = text.text;
  while (start < s.size()) {
    auto end = s.find(' ', start);
    if (end == std::string::npos) end = s.size();
    if (end > start) tokens.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

}  // namespace vaxsent::text
