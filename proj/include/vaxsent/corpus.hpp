#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vaxsent {

using Timestamp = std::chrono::sys_seconds;

// A UTC calendar month; the bucket key for every monthly statistic.
struct YearMonth {
  int year = 1970;
  unsigned month = 1;  // 1..12

  auto operator<=>(const YearMonth&) const = default;

  YearMonth next() const;
  std::string str() const;  // "YYYY-MM"

  // Accepts exactly "YYYY-MM".
  static std::optional<YearMonth> parse(std::string_view text);
};

YearMonth month_of(Timestamp t);

// ISO-8601 ("2021-02-03T04:05:06Z", fractional seconds and numeric offsets
// allowed) or the platform's legacy form ("Wed Feb 03 04:05:06 +0000 2021").
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

}  // namespace vaxsent

namespace vaxsent::ingest {

struct TweetRecord {
  std::string id;
  Timestamp timestamp;
  std::optional<std::string> country;  // ISO 3166-1 alpha-2, upper case
  std::string text;
};

enum class TweetFormat { jsonl, csv };

// Infers the format from ".jsonl"/".json"/".csv". Throws InvalidParameterError
// for anything else.
TweetFormat format_from_extension(const std::filesystem::path& path);

struct Reject {
  std::size_t line = 0;
  std::string reason;
};

struct LoadReport {
  std::size_t valid_rows = 0;
  std::size_t duplicates = 0;
  std::vector<Reject> rejects;
};

struct LoadResult {
  std::vector<TweetRecord> records;
  LoadReport report;
};

// Loads hydrated tweets. Malformed rows are reported in `report.rejects`;
// a later row repeating an earlier id is dropped and counted in
// `report.duplicates`. Throws IoError if the file cannot be read and
// EmptyCorpusError if no row is valid.
LoadResult load_tweets(const std::filesystem::path& path, TweetFormat format);

// Keeps the first occurrence of each id, preserving order. Returns the
// number of records removed.
std::size_t deduplicate(std::vector<TweetRecord>& records);

// Half-open [start, end) in calendar months.
struct MonthRange {
  YearMonth start;
  YearMonth end;
};

struct FilterSpec {
  std::vector<std::string> countries;  // empty: no country predicate
  std::optional<MonthRange> months;
};

// Throws InvalidRangeError if months->start >= months->end. Records without a
// country never match a country predicate.
std::vector<TweetRecord> filter(std::span<const TweetRecord> corpus, const FilterSpec& spec);

struct CasePoint {
  YearMonth month;
  std::uint64_t new_cases = 0;
};

struct CaseSeries {
  std::string country;
  std::vector<CasePoint> points;  // strictly increasing months
};

struct CaseLoadResult {
  std::vector<CaseSeries> series;  // ordered by country code
  std::vector<Reject> rejects;
};

// CSV with header `country,month,new_cases`. Throws IoError / FormatError for
// an unreadable file or wrong header; bad rows are rejected individually.
CaseLoadResult load_case_counts(const std::filesystem::path& path);

}  // namespace vaxsent::ingest
