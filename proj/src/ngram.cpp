#include "vaxsent/ngram.hpp"

#include <algorithm>
#include <fstream>

#include "utf8.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent::ngram {

std::vector<Gram> ngrams(std::span<const std::string> tokens, std::size_t n) {
  if (n < 1) throw InvalidParameterError("n-gram order must be at least 1");
  std::vector<Gram> out;
  if (tokens.size() < n) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    out.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                     tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return out;
}

std::string NgramCount::joined() const {
  std::string out;
  for (const auto& w : gram) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

NgramCounter::NgramCounter(std::size_t n, const StopwordSet& stopwords) : n_(n), stopwords_(&stopwords) {
  if (n < 1) throw InvalidParameterError("n-gram order must be at least 1");
}

void NgramCounter::add(std::span<const std::string> tokens) {
  if (tokens.size() < n_) return;
  for (std::size_t i = 0; i + n_ <= tokens.size(); ++i) {
    auto window = tokens.subspan(i, n_);
    bool stop = std::any_of(window.begin(), window.end(),
                            [&](const std::string& w) { return stopwords_->contains(w); });
    if (stop) continue;
    ++counts_[Gram(window.begin(), window.end())];
  }
}

void NgramCounter::merge(const NgramCounter& other) {
  if (other.n_ != n_) throw InvalidParameterError("cannot merge counters of different order");
  for (const auto& [gram, count] : other.counts_) counts_[gram] += count;
}

std::vector<NgramCount> NgramCounter::top(std::size_t k) const {
  std::vector<NgramCount> all;
  all.reserve(counts_.size());
  for (const auto& [gram, count] : counts_) all.push_back({gram, count});
  // counts_ is already in ascending gram order, so a stable sort on count
  // leaves ties lexicographic.
  std::stable_sort(all.begin(), all.end(),
                   [](const NgramCount& a, const NgramCount& b) { return a.count > b.count; });
  if (all.size() > k) all.resize(k);
  return all;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto word = detail::trim(line);
    if (word.empty() || word.front() == '#') continue;
    out.insert(detail::ascii_lower(word));
  }
  return out;
}

std::vector<NgramCount> top_k(std::span<const polarity::ScoredTweet> corpus, std::size_t n,
                              std::size_t k, const StopwordSet& stopwords) {
  if (k < 1) throw InvalidParameterError("k must be at least 1");
  NgramCounter counter(n, stopwords);
  for (const auto& t : corpus) counter.add(text::tokenize(t.normalized));
  return counter.top(k);
}

std::map<polarity::PolarityGroup, std::vector<NgramCount>> top_k_by_group(
    std::span<const polarity::ScoredTweet> corpus, std::size_t n, std::size_t k,
    const StopwordSet& stopwords) {
  if (k < 1) throw InvalidParameterError("k must be at least 1");
  std::map<polarity::PolarityGroup, NgramCounter> counters;
  for (auto g : polarity::kAllGroups) counters.emplace(g, NgramCounter(n, stopwords));
  for (const auto& t : corpus) counters.at(t.group).add(text::tokenize(t.normalized));
  std::map<polarity::PolarityGroup, std::vector<NgramCount>> out;
  for (const auto& [g, counter] : counters) out.emplace(g, counter.top(k));
  return out;
}

}  // namespace vaxsent::ngram
