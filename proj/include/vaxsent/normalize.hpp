#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vaxsent::text {

struct Substitution {
  std::string pattern;
  std::string replacement;
};

// Slang and emoji expansions applied during normalization.
//
// A pattern that is a single word token (letters, digits, intra-word
// apostrophes) matches whole tokens case-insensitively. Any other pattern is a
// symbol pattern: it must contain a character outside [A-Za-z0-9'] and no
// whitespace, and it matches its exact code point sequence anywhere in the
// raw text. Replacement words may not themselves be word patterns, so
// normalization stays idempotent.
class SubstitutionTable {
 public:
  // The standard expansions (omg, tbh, rt, dm, socialdistance, fwiw,
  // covid19vax, smiling faces, frowning faces).
  static SubstitutionTable defaults();

  // CSV `pattern,replacement`. Throws FormatError if the file is malformed,
  // violates the rules above, or lacks any of the standard patterns.
  static SubstitutionTable load(const std::filesystem::path& path);

  // Validates as `load` does, except that the standard patterns are not
  // required.
  static SubstitutionTable from_entries(std::vector<Substitution> entries);

  const std::vector<Substitution>& entries() const { return entries_; }

  // Normalized replacement words for a lowercase word token, or nullptr.
  const std::vector<std::string>* word(std::string_view token) const;

  struct SymbolRule {
    std::u32string pattern;
    std::vector<std::string> words;
  };
  // Longest pattern first.
  const std::vector<SymbolRule>& symbols() const { return symbols_; }

 private:
  std::vector<Substitution> entries_;
  std::unordered_map<std::string, std::vector<std::string>> words_;
  std::vector<SymbolRule> symbols_;
};

struct NormalizedText {
  std::string text;  // [a-z0-9'] words separated by single spaces
  std::size_t token_count = 0;

  bool operator==(const NormalizedText&) const = default;
};

// Pipeline: strip URLs; strip @-mentions; drop the '#' of hashtags; expand
// symbol patterns; lowercase; expand word patterns on whole tokens; turn every
// other character (punctuation, non-ASCII, stray apostrophes) into a
// separator; collapse whitespace.
NormalizedText normalize(std::string_view raw, const SubstitutionTable& table);

std::vector<std::string> tokenize(const NormalizedText& text);

}  // namespace vaxsent::text
