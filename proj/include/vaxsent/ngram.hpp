#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "vaxsent/polarity.hpp"

namespace vaxsent::ngram {

using Gram = std::vector<std::string>;
using StopwordSet = std::unordered_set<std::string>;

// Sliding window of width n over tokens, in positional order.
// Throws InvalidParameterError if n < 1.
std::vector<Gram> ngrams(std::span<const std::string> tokens, std::size_t n);

struct NgramCount {
  Gram gram;
  std::size_t count = 0;

  std::string joined() const;  // words separated by single spaces
  bool operator==(const NgramCount&) const = default;
};

// Gram counts that can be built per shard and merged in any order.
class NgramCounter {
 public:
  // Throws InvalidParameterError if n < 1.
  NgramCounter(std::size_t n, const StopwordSet& stopwords);

  // Counts every window of `tokens` containing no stopword.
  void add(std::span<const std::string> tokens);
  void merge(const NgramCounter& other);

  // Descending count, ties by ascending gram; at most k entries.
  std::vector<NgramCount> top(std::size_t k) const;

  std::size_t distinct() const { return counts_.size(); }

 private:
  std::size_t n_;
  const StopwordSet* stopwords_;
  std::map<Gram, std::size_t> counts_;
};

// One word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Throws InvalidParameterError if n < 1 or k < 1.
std::vector<NgramCount> top_k(std::span<const polarity::ScoredTweet> corpus, std::size_t n,
                              std::size_t k, const StopwordSet& stopwords);

// top_k over each polarity group's sub-corpus; all three groups are present.
std::map<polarity::PolarityGroup, std::vector<NgramCount>> top_k_by_group(
    std::span<const polarity::ScoredTweet> corpus, std::size_t n, std::size_t k,
    const StopwordSet& stopwords);

}  // namespace vaxsent::ngram
