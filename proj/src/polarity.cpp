#include "vaxsent/polarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "utf8.hpp"
#include "vaxsent/csv.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent::polarity {

namespace {

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = detail::trim(s);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

WeightTable::WeightTable(const std::array<int, kLabelCount>& weights, int divisor)
    : weights_(weights), divisor_(divisor) {
  if (divisor <= 0) throw InvalidParameterError("weight divisor must be positive");
}

WeightTable WeightTable::defaults() {
  std::array<int, kLabelCount> w{};
  w[index_of(SentimentLabel::Optimistic)] = 2;
  w[index_of(SentimentLabel::Thankful)] = 3;
  w[index_of(SentimentLabel::Empathetic)] = 0;
  w[index_of(SentimentLabel::Pessimistic)] = -4;
  w[index_of(SentimentLabel::Anxious)] = -2;
  w[index_of(SentimentLabel::Sad)] = -3;
  w[index_of(SentimentLabel::Annoyed)] = -1;
  w[index_of(SentimentLabel::Denial)] = -5;
  w[index_of(SentimentLabel::OfficialReport)] = 0;
  w[index_of(SentimentLabel::Surprise)] = 0;
  w[index_of(SentimentLabel::Joking)] = 1;
  return WeightTable(w, 11);
}

WeightTable WeightTable::load(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].fields != std::vector<std::string>{"label", "weight"}) {
    throw FormatError(path.string() + ": expected header 'label,weight'");
  }
  std::array<int, kLabelCount> w{};
  std::array<bool, kLabelCount> seen{};
  std::optional<int> divisor;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    auto where = path.string() + ":" + std::to_string(rows[i].line);
    if (f.size() != 2) throw FormatError(where + ": expected 2 fields");
    auto value = parse_number<int>(f[1]);
    if (!value) throw FormatError(where + ": weight '" + f[1] + "' is not an integer");
    if (detail::ascii_lower(detail::trim(f[0])) == "divisor") {
      if (divisor) throw FormatError(where + ": duplicate divisor row");
      if (*value <= 0) throw FormatError(where + ": divisor must be positive");
      divisor = *value;
      continue;
    }
    auto label = parse_label(f[0]);
    if (!label) throw FormatError(where + ": unknown label '" + f[0] + "'");
    if (seen[index_of(*label)]) throw FormatError(where + ": duplicate label '" + f[0] + "'");
    seen[index_of(*label)] = true;
    w[index_of(*label)] = *value;
  }
  for (auto l : kAllLabels) {
    if (!seen[index_of(l)]) {
      throw FormatError(path.string() + ": missing weight for " + std::string(label_name(l)));
    }
  }
  if (!divisor) throw FormatError(path.string() + ": missing divisor row");
  return WeightTable(w, *divisor);
}

WeightTable WeightTable::scaled(int factor) const {
  if (factor <= 0) throw InvalidParameterError("scale factor must be positive");
  auto w = weights_;
  for (auto& x : w) x *= factor;
  return WeightTable(w, divisor_);
}

int weight_sum(const LabelSet& labels, const WeightTable& table) {
  int sum = 0;
  for (auto l : labels.labels()) sum += table.weight(l);
  return sum;
}

double vaccine_polarity(const LabelSet& labels, const WeightTable& table) {
  return static_cast<double>(weight_sum(labels, table)) / table.divisor();
}

std::string_view stance_name(Stance s) {
  switch (s) {
    case Stance::anti: return "anti";
    case Stance::neutral: return "neutral";
    case Stance::pro: return "pro";
  }
  return "neutral";
}

Stance stance(double vaccine_score) {
  if (vaccine_score > 0.0) return Stance::pro;
  if (vaccine_score < 0.0) return Stance::anti;
  return Stance::neutral;
}

PolarityLexicon::PolarityLexicon(std::unordered_map<std::string, double> entries)
    : entries_(std::move(entries)) {
  for (const auto& [word, p] : entries_) {
    if (!(p >= -1.0 && p <= 1.0)) {
      throw InvalidParameterError("polarity of '" + word + "' outside [-1, 1]");
    }
  }
}

PolarityLexicon PolarityLexicon::load(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].fields != std::vector<std::string>{"word", "polarity"}) {
    throw FormatError(path.string() + ": expected header 'word,polarity'");
  }
  std::unordered_map<std::string, double> entries;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    auto where = path.string() + ":" + std::to_string(rows[i].line);
    if (f.size() != 2) throw FormatError(where + ": expected 2 fields");
    auto p = parse_number<double>(f[1]);
    if (!p || !(*p >= -1.0 && *p <= 1.0)) throw FormatError(where + ": polarity must be in [-1, 1]");
    auto word = detail::ascii_lower(detail::trim(f[0]));
    if (!entries.emplace(word, *p).second) throw FormatError(where + ": duplicate word '" + word + "'");
  }
  return PolarityLexicon(std::move(entries));
}

const double* PolarityLexicon::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

double naive_polarity(std::span<const std::string> tokens, const PolarityLexicon& lexicon) {
  // Sum in whole micro-units so the mean is rounded once; a mean of exactly
  // 0.2 must not drift above it.
  std::int64_t sum = 0;
  std::int64_t hits = 0;
  for (const auto& t : tokens) {
    if (const double* p = lexicon.find(t)) {
      sum += std::llround(*p * 1e6);
      ++hits;
    }
  }
  if (hits == 0) return 0.0;
  return std::clamp(static_cast<double>(sum) / (static_cast<double>(hits) * 1e6), -1.0, 1.0);
}

std::string_view group_name(PolarityGroup g) {
  switch (g) {
    case PolarityGroup::negative: return "negative";
    case PolarityGroup::neutral: return "neutral";
    case PolarityGroup::positive: return "positive";
  }
  return "neutral";
}

PolarityGroup polarity_group(double p) {
  if (p <= -0.2) return PolarityGroup::negative;
  if (p > 0.2) return PolarityGroup::positive;
  return PolarityGroup::neutral;
}

ScoredTweet score(ingest::TweetRecord record, text::NormalizedText normalized,
                  const LabelVector& probabilities, const LabelSet& labels,
                  const WeightTable& weights, const PolarityLexicon& lexicon) {
  ScoredTweet out;
  out.labels = labels;
  out.probabilities = probabilities;
  out.weight_sum = weight_sum(labels, weights);
  out.vaccine_score = static_cast<double>(out.weight_sum) / weights.divisor();
  out.naive_score = naive_polarity(text::tokenize(normalized), lexicon);
  out.stance = stance(out.vaccine_score);
  out.group = polarity_group(out.naive_score);
  out.record = std::move(record);
  out.normalized = std::move(normalized);
  return out;
}

}  // namespace vaxsent::polarity
