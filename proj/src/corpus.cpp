#include "vaxsent/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_set>

#include "json.hpp"
#include "utf8.hpp"
#include "vaxsent/csv.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent {

namespace {

using namespace std::chrono;

// Parses exactly `width` decimal digits at s[pos].
std::optional<int> digits(std::string_view s, std::size_t pos, std::size_t width) {
  if (pos + width > s.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

std::optional<Timestamp> make_time(int y, int mo, int d, int h, int mi, int sec, int offset_minutes) {
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  auto t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} - minutes{offset_minutes};
  return time_point_cast<seconds>(t);
}

// "+HH:MM", "+HHMM", "+HH" or "Z" -> minutes east of UTC.
std::optional<int> parse_offset(std::string_view s) {
  if (s == "Z" || s == "z") return 0;
  if (s.size() < 3 || (s[0] != '+' && s[0] != '-')) return std::nullopt;
  auto hh = digits(s, 1, 2);
  if (!hh) return std::nullopt;
  int mm = 0;
  std::string_view rest = s.substr(3);
  if (!rest.empty() && rest[0] == ':') rest.remove_prefix(1);
  if (!rest.empty()) {
    if (rest.size() != 2) return std::nullopt;
    auto m = digits(rest, 0, 2);
    if (!m) return std::nullopt;
    mm = *m;
  }
  if (*hh > 23 || mm > 59) return std::nullopt;
  int total = *hh * 60 + mm;
  return s[0] == '-' ? -total : total;
}

std::optional<Timestamp> parse_iso(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':') {
    return std::nullopt;
  }
  auto y = digits(s, 0, 4), mo = digits(s, 5, 2), d = digits(s, 8, 2);
  auto h = digits(s, 11, 2), mi = digits(s, 14, 2), sec = digits(s, 17, 2);
  if (!y || !mo || !d || !h || !mi || !sec) return std::nullopt;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  int offset = 0;
  if (pos < s.size()) {
    auto off = parse_offset(s.substr(pos));
    if (!off) return std::nullopt;
    offset = *off;
  }
  return make_time(*y, *mo, *d, *h, *mi, *sec, offset);
}

// "Wed Oct 10 20:19:24 +0000 2018"
std::optional<Timestamp> parse_legacy(std::string_view s) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  if (s.size() != 30 || s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' || s[25] != ' ' ||
      s[13] != ':' || s[16] != ':') {
    return std::nullopt;
  }
  auto it = std::find(kMonths.begin(), kMonths.end(), s.substr(4, 3));
  if (it == kMonths.end()) return std::nullopt;
  int mo = static_cast<int>(it - kMonths.begin()) + 1;
  auto d = digits(s, 8, 2), h = digits(s, 11, 2), mi = digits(s, 14, 2), sec = digits(s, 17, 2);
  auto y = digits(s, 26, 4);
  auto off = parse_offset(s.substr(20, 5));
  if (!d || !h || !mi || !sec || !y || !off) return std::nullopt;
  return make_time(*y, mo, *d, *h, *mi, *sec, *off);
}

}  // namespace

YearMonth YearMonth::next() const {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
  return buf;
}

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  auto y = digits(text, 0, 4), m = digits(text, 5, 2);
  if (!y || !m || *m < 1 || *m > 12) return std::nullopt;
  return YearMonth{*y, static_cast<unsigned>(*m)};
}

YearMonth month_of(Timestamp t) {
  year_month_day ymd{floor<days>(t)};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = detail::trim(text);
  if (auto t = parse_iso(text)) return t;
  return parse_legacy(text);
}

std::string format_timestamp(Timestamp t) {
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

}  // namespace vaxsent

namespace vaxsent::ingest {

namespace {

std::optional<std::string> normalize_country(std::string_view raw) {
  auto c = detail::trim(raw);
  if (c.size() != 2 || !std::isalpha(static_cast<unsigned char>(c[0])) ||
      !std::isalpha(static_cast<unsigned char>(c[1]))) {
    return std::nullopt;
  }
  std::string out(c);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Shared field validation for both tweet formats. Returns a reject reason.
std::optional<std::string> build_record(std::string id, std::string_view created_at,
                                        std::optional<std::string_view> country, std::string text,
                                        TweetRecord& out) {
  if (detail::trim(id).empty()) return "empty id";
  if (detail::trim(text).empty()) return "empty text";
  auto ts = parse_timestamp(created_at);
  if (!ts) return "invalid created_at '" + std::string(created_at) + "'";
  out.id = std::move(id);
  out.timestamp = *ts;
  out.text = std::move(text);
  out.country.reset();
  if (country && !detail::trim(*country).empty()) {
    auto cc = normalize_country(*country);
    if (!cc) return "invalid country '" + std::string(*country) + "'";
    out.country = std::move(cc);
  }
  return std::nullopt;
}

void load_jsonl(std::istream& in, std::vector<TweetRecord>& records, LoadReport& report) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (detail::trim(line).empty()) continue;
    auto reject = [&](std::string reason) { report.rejects.push_back({line_no, std::move(reason)}); };

    auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      reject("invalid JSON object");
      continue;
    }
    auto string_field = [&](const char* key) -> const std::string* {
      auto it = doc.find(key);
      return it != doc.end() && it->is_string() ? it->get_ptr<const std::string*>() : nullptr;
    };
    const std::string* id = string_field("id");
    const std::string* created = string_field("created_at");
    const std::string* text = string_field("text");
    if (!id) {
      reject("missing or non-string id");
      continue;
    }
    if (!created) {
      reject("missing or non-string created_at");
      continue;
    }
    if (!text) {
      reject("missing or non-string text");
      continue;
    }
    std::optional<std::string_view> country;
    if (auto it = doc.find("country"); it != doc.end() && !it->is_null()) {
      if (!it->is_string()) {
        reject("non-string country");
        continue;
      }
      country = it->get_ref<const std::string&>();
    }
    TweetRecord record;
    if (auto why = build_record(*id, *created, country, *text, record)) {
      reject(*why);
      continue;
    }
    ++report.valid_rows;
    records.push_back(std::move(record));
  }
}

void load_csv(std::istream& in, std::vector<TweetRecord>& records, LoadReport& report) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return;
  if (!header->fields.empty() && header->fields[0].starts_with("\xEF\xBB\xBF")) {
    header->fields[0].erase(0, 3);
  }
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header->fields.size(); ++i) column[header->fields[i]] = i;
  for (const char* required : {"id", "created_at", "text"}) {
    if (!column.contains(required)) {
      throw FormatError(std::string("tweet CSV header lacks column '") + required + "'");
    }
  }
  const auto width = header->fields.size();
  const auto country_col = column.find("country");
  while (true) {
    std::optional<csv::Row> row;
    try {
      row = reader.next();
    } catch (const FormatError& e) {
      report.rejects.push_back({0, e.what()});
      break;
    }
    if (!row) break;
    if (row->fields.size() != width) {
      report.rejects.push_back({row->line, "expected " + std::to_string(width) + " fields, got " +
                                               std::to_string(row->fields.size())});
      continue;
    }
    auto& f = row->fields;
    std::optional<std::string_view> country;
    if (country_col != column.end()) country = f[country_col->second];
    TweetRecord record;
    if (auto why = build_record(f[column["id"]], f[column["created_at"]], country,
                                f[column["text"]], record)) {
      report.rejects.push_back({row->line, *why});
      continue;
    }
    ++report.valid_rows;
    records.push_back(std::move(record));
  }
}

}  // namespace

TweetFormat format_from_extension(const std::filesystem::path& path) {
  auto ext = detail::ascii_lower(path.extension().string());
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return TweetFormat::jsonl;
  if (ext == ".csv") return TweetFormat::csv;
  throw InvalidParameterError("cannot infer tweet format from '" + path.string() +
                              "'; expected .jsonl or .csv");
}

std::size_t deduplicate(std::vector<TweetRecord>& records) {
  std::unordered_set<std::string> seen;
  seen.reserve(records.size());
  auto before = records.size();
  std::erase_if(records, [&](const TweetRecord& r) { return !seen.insert(r.id).second; });
  return before - records.size();
}

LoadResult load_tweets(const std::filesystem::path& path, TweetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  LoadResult result;
  if (format == TweetFormat::jsonl) {
    load_jsonl(in, result.records, result.report);
  } else {
    load_csv(in, result.records, result.report);
  }
  if (in.bad()) throw IoError("read error in " + path.string());
  result.report.duplicates = deduplicate(result.records);
  if (result.records.empty()) {
    throw EmptyCorpusError("no valid tweet records in " + path.string() + " (" +
                           std::to_string(result.report.rejects.size()) + " rejected)");
  }
  return result;
}

std::vector<TweetRecord> filter(std::span<const TweetRecord> corpus, const FilterSpec& spec) {
  if (spec.months && !(spec.months->start < spec.months->end)) {
    throw InvalidRangeError("month range [" + spec.months->start.str() + ", " +
                            spec.months->end.str() + ") is empty");
  }
  std::vector<TweetRecord> out;
  for (const auto& r : corpus) {
    if (!spec.countries.empty()) {
      if (!r.country) continue;
      if (std::find(spec.countries.begin(), spec.countries.end(), *r.country) == spec.countries.end()) {
        continue;
      }
    }
    if (spec.months) {
      auto m = month_of(r.timestamp);
      if (m < spec.months->start || !(m < spec.months->end)) continue;
    }
    out.push_back(r);
  }
  return out;
}

CaseLoadResult load_case_counts(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].fields != std::vector<std::string>{"country", "month", "new_cases"}) {
    throw FormatError(path.string() + ": expected header 'country,month,new_cases'");
  }
  CaseLoadResult result;
  std::map<std::string, std::map<YearMonth, std::uint64_t>> by_country;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto reject = [&](std::string why) { result.rejects.push_back({row.line, std::move(why)}); };
    if (row.fields.size() != 3) {
      reject("expected 3 fields");
      continue;
    }
    auto country = normalize_country(row.fields[0]);
    if (!country) {
      reject("invalid country '" + row.fields[0] + "'");
      continue;
    }
    auto month = YearMonth::parse(detail::trim(row.fields[1]));
    if (!month) {
      reject("unparseable month '" + row.fields[1] + "'");
      continue;
    }
    auto count_text = detail::trim(row.fields[2]);
    if (count_text.starts_with('-')) {
      reject("negative new_cases");
      continue;
    }
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count_text.empty()) {
      reject("new_cases is not a non-negative integer");
      continue;
    }
    if (!by_country[*country].emplace(*month, count).second) {
      reject("duplicate month " + month->str() + " for " + *country);
    }
  }
  for (auto& [country, points] : by_country) {
    if (points.empty()) continue;
    CaseSeries series{country, {}};
    for (auto& [month, count] : points) series.points.push_back({month, count});
    result.series.push_back(std::move(series));
  }
  return result;
}

}  // namespace vaxsent::ingest
