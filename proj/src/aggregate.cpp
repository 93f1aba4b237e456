#include "vaxsent/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "vaxsent/error.hpp"

namespace vaxsent::aggregate {

namespace {

// Sum in ascending order so the result does not depend on corpus order.
double order_free_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  long double sum = 0;
  for (double v : values) sum += v;
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

}  // namespace

std::string country_key(const ingest::TweetRecord& record) {
  return record.country ? *record.country : std::string(kUnknownCountry);
}

std::size_t histogram_bucket(std::size_t label_count) { return std::min<std::size_t>(label_count, 3); }

std::vector<MonthlyAggregate> aggregate_monthly(std::span<const polarity::ScoredTweet> corpus,
                                                std::span<const ingest::CaseSeries> cases) {
  struct Bucket {
    MonthlyAggregate agg;
    std::vector<double> vaccine, naive;
  };
  std::map<std::pair<std::string, YearMonth>, Bucket> buckets;
  for (const auto& t : corpus) {
    auto key = std::make_pair(country_key(t.record), month_of(t.record.timestamp));
    auto& b = buckets[key];
    ++b.agg.tweet_count;
    b.vaccine.push_back(t.vaccine_score);
    b.naive.push_back(t.naive_score);
    for (auto l : t.labels.labels()) ++b.agg.per_label_counts[index_of(l)];
    ++b.agg.label_count_histogram[histogram_bucket(t.labels.size())];
  }

  std::map<std::pair<std::string, YearMonth>, std::uint64_t> case_index;
  for (const auto& s : cases) {
    for (const auto& p : s.points) case_index[{s.country, p.month}] = p.new_cases;
  }

  std::vector<MonthlyAggregate> out;
  out.reserve(buckets.size());
  for (auto& [key, b] : buckets) {
    b.agg.country = key.first;
    b.agg.month = key.second;
    b.agg.mean_vaccine_score = order_free_mean(std::move(b.vaccine));
    b.agg.mean_naive_score = order_free_mean(std::move(b.naive));
    if (auto it = case_index.find(key); it != case_index.end()) b.agg.new_cases = it->second;
    out.push_back(std::move(b.agg));
  }
  return out;
}

std::array<double, 4> label_count_distribution(std::span<const polarity::ScoredTweet> corpus) {
  if (corpus.empty()) throw EmptyCorpusError("label-count distribution of an empty corpus");
  LabelCountHistogram h{};
  for (const auto& t : corpus) ++h[histogram_bucket(t.labels.size())];
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<double>(h[i]) / static_cast<double>(corpus.size());
  return out;
}

LabelCounts sentiment_totals(std::span<const polarity::ScoredTweet> corpus) {
  LabelCounts out{};
  for (const auto& t : corpus) {
    for (auto l : t.labels.labels()) ++out[index_of(l)];
  }
  return out;
}

ScoreSummary summarize(std::span<const double> values) {
  if (values.empty()) throw EmptyCorpusError("no scores to summarize");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  auto quantile = [&](double p) {
    double h = static_cast<double>(x.size() - 1) * p;
    auto f = static_cast<std::size_t>(std::floor(h));
    if (f + 1 >= x.size()) return x.back();
    return x[f] + (h - static_cast<double>(f)) * (x[f + 1] - x[f]);
  };
  ScoreSummary s;
  s.min = x.front();
  s.max = x.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = order_free_mean(std::move(x));
  return s;
}

std::string_view score_kind_name(ScoreKind kind) {
  return kind == ScoreKind::vaccine ? "vaccine" : "naive";
}

ScoreSummary score_distribution_stats(std::span<const polarity::ScoredTweet> corpus,
                                      std::string_view country, ScoreKind kind) {
  std::vector<double> values;
  for (const auto& t : corpus) {
    if (country_key(t.record) != country) continue;
    values.push_back(kind == ScoreKind::vaccine ? t.vaccine_score : t.naive_score);
  }
  if (values.empty()) throw EmptyCorpusError("no tweets for country '" + std::string(country) + "'");
  return summarize(values);
}

std::map<std::string, std::array<double, kLabelCount>> sentiment_share_by_country(
    std::span<const polarity::ScoredTweet> corpus) {
  std::map<std::string, std::pair<std::size_t, LabelCounts>> tally;
  for (const auto& t : corpus) {
    auto& [total, counts] = tally[country_key(t.record)];
    ++total;
    for (auto l : t.labels.labels()) ++counts[index_of(l)];
  }
  std::map<std::string, std::array<double, kLabelCount>> out;
  for (const auto& [country, entry] : tally) {
    std::array<double, kLabelCount> share{};
    for (std::size_t i = 0; i < kLabelCount; ++i) {
      share[i] = static_cast<double>(entry.second[i]) / static_cast<double>(entry.first);
    }
    out.emplace(country, share);
  }
  return out;
}

std::map<YearMonth, LabelCounts> monthly_sentiment_trend(std::span<const polarity::ScoredTweet> corpus,
                                                         std::string_view country) {
  std::map<YearMonth, LabelCounts> out;
  for (const auto& t : corpus) {
    if (country_key(t.record) != country) continue;
    auto& counts = out[month_of(t.record.timestamp)];
    for (auto l : t.labels.labels()) ++counts[index_of(l)];
  }
  return out;
}

}  // namespace vaxsent::aggregate
