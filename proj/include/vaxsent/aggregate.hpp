#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaxsent/corpus.hpp"
#include "vaxsent/labels.hpp"
#include "vaxsent/polarity.hpp"

namespace vaxsent::aggregate {

// Country key for records that carry no country.
inline constexpr std::string_view kUnknownCountry = "ALL";

std::string country_key(const ingest::TweetRecord& record);

using LabelCounts = std::array<std::size_t, kLabelCount>;

// Tweets by number of assigned labels: 0, 1, 2, 3 or more.
using LabelCountHistogram = std::array<std::size_t, 4>;
std::size_t histogram_bucket(std::size_t label_count);

struct MonthlyAggregate {
  std::string country;
  YearMonth month;
  std::size_t tweet_count = 0;
  std::optional<double> mean_vaccine_score;  // absent iff tweet_count == 0
  std::optional<double> mean_naive_score;
  LabelCounts per_label_counts{};
  LabelCountHistogram label_count_histogram{};
  std::optional<std::uint64_t> new_cases;
};

// One entry per (country, month) holding at least one tweet, ordered by
// country then month. Case counts are joined where the series has the month.
std::vector<MonthlyAggregate> aggregate_monthly(std::span<const polarity::ScoredTweet> corpus,
                                                std::span<const ingest::CaseSeries> cases = {});

// Fractions of tweets with 0, 1, 2, 3+ labels. Throws EmptyCorpusError.
std::array<double, 4> label_count_distribution(std::span<const polarity::ScoredTweet> corpus);

LabelCounts sentiment_totals(std::span<const polarity::ScoredTweet> corpus);

struct ScoreSummary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

// Quartiles interpolate linearly between closest ranks: the p-quantile of
// sorted x[0..n-1] is x[f] + (h - f) * (x[f+1] - x[f]) with h = (n - 1) p and
// f = floor(h). Throws EmptyCorpusError for no values.
ScoreSummary summarize(std::span<const double> values);

enum class ScoreKind { vaccine, naive };
std::string_view score_kind_name(ScoreKind kind);

// Summary of one country's tweet scores. Throws EmptyCorpusError when the
// country has no tweets.
ScoreSummary score_distribution_stats(std::span<const polarity::ScoredTweet> corpus,
                                      std::string_view country,
                                      ScoreKind kind = ScoreKind::vaccine);

// country -> fraction of that country's tweets carrying each label.
std::map<std::string, std::array<double, kLabelCount>> sentiment_share_by_country(
    std::span<const polarity::ScoredTweet> corpus);

std::map<YearMonth, LabelCounts> monthly_sentiment_trend(
    std::span<const polarity::ScoredTweet> corpus, std::string_view country);

}  // namespace vaxsent::aggregate
