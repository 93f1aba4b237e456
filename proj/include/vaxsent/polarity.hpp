#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "vaxsent/corpus.hpp"
#include "vaxsent/labels.hpp"
#include "vaxsent/normalize.hpp"

namespace vaxsent::polarity {

// Integer weight per sentiment plus the fixed divisor of the vaccine score.
class WeightTable {
 public:
  // Optimistic 2, Thankful 3, Empathetic 0, Pessimistic -4, Anxious -2,
  // Sad -3, Annoyed -1, Denial -5, OfficialReport 0, Surprise 0, Joking 1;
  // divisor 11.
  static WeightTable defaults();

  // Throws InvalidParameterError if divisor <= 0.
  WeightTable(const std::array<int, kLabelCount>& weights, int divisor);

  // CSV `label,weight`, one row per label plus a `divisor,N` row.
  static WeightTable load(const std::filesystem::path& path);

  int weight(SentimentLabel label) const { return weights_[index_of(label)]; }
  int divisor() const { return divisor_; }
  const std::array<int, kLabelCount>& weights() const { return weights_; }

  // Every weight multiplied by `factor` (> 0); the divisor is unchanged.
  WeightTable scaled(int factor) const;

  bool operator==(const WeightTable&) const = default;

 private:
  std::array<int, kLabelCount> weights_;
  int divisor_;
};

// Sum of the weights of the assigned labels.
int weight_sum(const LabelSet& labels, const WeightTable& table);

// weight_sum / divisor; 0 for the empty set.
double vaccine_polarity(const LabelSet& labels, const WeightTable& table);

enum class Stance { anti, neutral, pro };
std::string_view stance_name(Stance s);

// Sign of the vaccine score; exactly zero is neutral.
Stance stance(double vaccine_score);

// Word -> polarity in [-1, 1].
class PolarityLexicon {
 public:
  PolarityLexicon() = default;
  // Throws InvalidParameterError for a polarity outside [-1, 1].
  explicit PolarityLexicon(std::unordered_map<std::string, double> entries);

  // CSV `word,polarity`.
  static PolarityLexicon load(const std::filesystem::path& path);

  const double* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

// Mean polarity of the tokens found in the lexicon (each occurrence counts),
// 0 when none is found, clamped to [-1, 1]. Polarities count to six decimal
// places and the mean is exact up to a single final rounding.
double naive_polarity(std::span<const std::string> tokens, const PolarityLexicon& lexicon);

enum class PolarityGroup { negative, neutral, positive };
inline constexpr std::array<PolarityGroup, 3> kAllGroups = {
    PolarityGroup::negative, PolarityGroup::neutral, PolarityGroup::positive};
std::string_view group_name(PolarityGroup g);

// p <= -0.2 negative, p > 0.2 positive, otherwise neutral.
PolarityGroup polarity_group(double p);

struct ScoredTweet {
  ingest::TweetRecord record;
  text::NormalizedText normalized;
  LabelVector probabilities;
  LabelSet labels;
  int weight_sum = 0;
  double vaccine_score = 0.0;
  double naive_score = 0.0;
  Stance stance = Stance::neutral;
  PolarityGroup group = PolarityGroup::neutral;
};

// Fills the score fields from an already classified tweet.
ScoredTweet score(ingest::TweetRecord record, text::NormalizedText normalized,
                  const LabelVector& probabilities, const LabelSet& labels,
                  const WeightTable& weights, const PolarityLexicon& lexicon);

}  // namespace vaxsent::polarity
