#include "vaxsent/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "digest.hpp"
#include "json.hpp"
#include "utf8.hpp"
#include "vaxsent/aggregate.hpp"
#include "vaxsent/csv.hpp"
#include "vaxsent/exported_model.hpp"

#ifndef VAXSENT_DEFAULT_DATA_DIR
#define VAXSENT_DEFAULT_DATA_DIR "data"
#endif

namespace vaxsent::report {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::config: return "config";
    case Stage::ingest: return "ingest";
    case Stage::classify: return "classify";
    case Stage::aggregate: return "aggregate";
  }
  return "unknown";
}

int exit_code(Stage stage) {
  switch (stage) {
    case Stage::config: return 2;
    case Stage::ingest: return 3;
    case Stage::classify: return 4;
    case Stage::aggregate: return 5;
  }
  return 1;
}

StageError::StageError(Stage stage, const std::string& message)
    : Error(std::string(stage_name(stage)) + ": " + message), stage_(stage) {}

std::string_view backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::rule_lexicon: return "rule-lexicon";
    case BackendKind::precomputed: return "precomputed";
    case BackendKind::exported_model: return "exported-model";
  }
  return "rule-lexicon";
}

std::optional<BackendKind> parse_backend(std::string_view name) {
  for (auto k : {BackendKind::rule_lexicon, BackendKind::precomputed, BackendKind::exported_model}) {
    if (backend_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::score: return "score";
    case Command::aggregate: return "aggregate";
    case Command::ngrams: return "ngrams";
    case Command::report: return "report";
  }
  return "report";
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("VAXSENT_DATA_DIR"); env && *env) return env;
  return VAXSENT_DEFAULT_DATA_DIR;
}

namespace {

// Runs `fn`, rewrapping any project error as a StageError for `stage`.
template <typename Fn>
auto in_stage(Stage stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e.what());
  }
}

const char* kDataPrefix = "<data>/";

// Effective path of an input: the configured one, or a bundled default.
struct Input {
  std::string shown;  // as recorded in the manifest
  fs::path path;      // empty for built-in tables
};

Input pick(const PipelineConfig& c, const std::string& configured, const char* bundled) {
  if (!configured.empty()) return {configured, c.resolve(configured)};
  if (bundled) return {std::string(kDataPrefix) + bundled, default_data_dir() / bundled};
  return {"(built-in)", {}};
}

Input backend_input(const PipelineConfig& c) {
  return pick(c, c.backend_path, c.backend == BackendKind::rule_lexicon ? "rule_lexicon.csv" : nullptr);
}

std::string fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<std::string> label_header() {
  std::vector<std::string> out;
  for (auto l : kAllLabels) out.emplace_back(label_name(l));
  return out;
}

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw StageError(Stage::aggregate, "cannot create output directory " + dir_.string());
  }

  // Writes `content` to `name` and records it.
  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw StageError(Stage::aggregate, "cannot write " + (dir_ / name).string());
    files_.push_back({name, detail::sha256_hex(content)});
  }

  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string csv_text(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) csv::write_row(out, r);
  return out.str();
}

void write_scored(OutputDir& out, const ScoredCorpus& corpus) {
  std::vector<std::vector<std::string>> rows = {{"id", "created_at", "country", "month", "labels",
                                                 "weight_sum", "vaccine_score", "naive_score", "stance",
                                                 "polarity_group", "normalized_text"}};
  std::vector<std::vector<std::string>> preds;
  std::vector<std::string> pred_header = {"id"};
  for (std::size_t i = 0; i < kLabelCount; ++i) pred_header.push_back("p" + std::to_string(i));
  preds.push_back(pred_header);
  for (const auto& t : corpus.tweets) {
    rows.push_back({t.record.id, format_timestamp(t.record.timestamp), t.record.country.value_or(""),
                    month_of(t.record.timestamp).str(), t.labels.str(), std::to_string(t.weight_sum),
                    fixed(t.vaccine_score), fixed(t.naive_score), std::string(polarity::stance_name(t.stance)),
                    std::string(polarity::group_name(t.group)), t.normalized.text});
    std::vector<std::string> p = {t.record.id};
    for (double v : t.probabilities.values()) p.push_back(fixed(v));
    preds.push_back(std::move(p));
  }
  out.write("scored_tweets.csv", csv_text(rows));
  out.write("predictions.csv", csv_text(preds));
}

void write_aggregates(OutputDir& out, const ScoredCorpus& corpus, const Resources& res) {
  const auto& tweets = corpus.tweets;
  {
    std::vector<std::string> header = {"country", "month", "tweet_count", "mean_vaccine_score",
                                       "mean_naive_score"};
    for (auto& l : label_header()) header.push_back(l);
    for (const char* b : {"labels_0", "labels_1", "labels_2", "labels_3plus", "new_cases"}) header.emplace_back(b);
    std::vector<std::vector<std::string>> rows = {header};
    for (const auto& m : aggregate::aggregate_monthly(tweets, res.cases)) {
      std::vector<std::string> r = {m.country, m.month.str(), std::to_string(m.tweet_count),
                                    m.mean_vaccine_score ? fixed(*m.mean_vaccine_score) : "",
                                    m.mean_naive_score ? fixed(*m.mean_naive_score) : ""};
      for (auto c : m.per_label_counts) r.push_back(std::to_string(c));
      for (auto c : m.label_count_histogram) r.push_back(std::to_string(c));
      r.push_back(m.new_cases ? std::to_string(*m.new_cases) : "");
      rows.push_back(std::move(r));
    }
    out.write("monthly.csv", csv_text(rows));
  }
  {
    std::vector<std::vector<std::string>> rows = {{"labels", "tweets", "fraction"}};
    aggregate::LabelCountHistogram h{};
    for (const auto& t : tweets) ++h[aggregate::histogram_bucket(t.labels.size())];
    auto dist = aggregate::label_count_distribution(tweets);
    const char* names[] = {"0", "1", "2", "3+"};
    for (std::size_t i = 0; i < 4; ++i) rows.push_back({names[i], std::to_string(h[i]), fixed(dist[i])});
    out.write("label_distribution.csv", csv_text(rows));
  }
  {
    std::vector<std::vector<std::string>> rows = {{"label", "tweets"}};
    auto totals = aggregate::sentiment_totals(tweets);
    for (auto l : kAllLabels) rows.push_back({std::string(label_name(l)), std::to_string(totals[index_of(l)])});
    out.write("sentiment_totals.csv", csv_text(rows));
  }
  std::map<std::string, std::size_t> per_country;
  for (const auto& t : tweets) ++per_country[aggregate::country_key(t.record)];
  {
    std::vector<std::vector<std::string>> rows = {{"country", "label", "tweets", "share"}};
    for (const auto& [country, share] : aggregate::sentiment_share_by_country(tweets)) {
      for (auto l : kAllLabels) {
        auto n = static_cast<std::size_t>(std::llround(share[index_of(l)] * per_country[country]));
        rows.push_back({country, std::string(label_name(l)), std::to_string(n), fixed(share[index_of(l)])});
      }
    }
    out.write("sentiment_share.csv", csv_text(rows));
  }
  {
    std::vector<std::vector<std::string>> rows = {
        {"country", "score", "tweets", "min", "q1", "median", "q3", "max", "mean"}};
    for (const auto& [country, n] : per_country) {
      for (auto kind : {aggregate::ScoreKind::vaccine, aggregate::ScoreKind::naive}) {
        auto s = aggregate::score_distribution_stats(tweets, country, kind);
        rows.push_back({country, std::string(aggregate::score_kind_name(kind)), std::to_string(n), fixed(s.min),
                        fixed(s.q1), fixed(s.median), fixed(s.q3), fixed(s.max), fixed(s.mean)});
      }
    }
    out.write("score_stats.csv", csv_text(rows));
  }
}

std::string ngram_csv(const std::vector<ngram::NgramCount>& grams) {
  std::vector<std::vector<std::string>> rows = {{"rank", "gram", "count"}};
  for (std::size_t i = 0; i < grams.size(); ++i) {
    rows.push_back({std::to_string(i + 1), grams[i].joined(), std::to_string(grams[i].count)});
  }
  return csv_text(rows);
}

void write_ngrams(OutputDir& out, const PipelineConfig& c, const ScoredCorpus& corpus, const Resources& res) {
  for (auto n : c.ngram_orders) {
    auto prefix = "ngrams_n" + std::to_string(n) + "_";
    out.write(prefix + "all.csv", ngram_csv(ngram::top_k(corpus.tweets, n, c.top_k, res.stopwords)));
    for (const auto& [group, grams] : ngram::top_k_by_group(corpus.tweets, n, c.top_k, res.stopwords)) {
      out.write(prefix + std::string(polarity::group_name(group)) + ".csv", ngram_csv(grams));
    }
  }
}

json input_entry(const std::string& role, const Input& in) {
  json e = {{"role", role}, {"path", in.shown}};
  if (!in.path.empty() && fs::is_regular_file(in.path)) e["sha256"] = detail::sha256_file(in.path);
  return e;
}

json input_digests(const PipelineConfig& c) {
  json inputs = json::array();
  for (const auto& p : c.corpus) inputs.push_back(input_entry("corpus", {p, c.resolve(p)}));
  inputs.push_back(input_entry("substitutions", pick(c, c.substitutions, nullptr)));
  auto backend = backend_input(c);
  if (c.backend == BackendKind::exported_model && !backend.path.empty()) {
    auto manifest = classify::ModelManifest::load(backend.path);
    inputs.push_back(input_entry("model_manifest", {backend.shown + "/manifest.json", backend.path / "manifest.json"}));
    inputs.push_back(input_entry("model_graph", {backend.shown + "/" + manifest.model.filename().string(), manifest.model}));
    inputs.push_back(input_entry("model_vocab", {backend.shown + "/" + manifest.vocab.filename().string(), manifest.vocab}));
  } else {
    inputs.push_back(input_entry("backend", backend));
  }
  inputs.push_back(input_entry("weights", pick(c, c.weights, nullptr)));
  inputs.push_back(input_entry("lexicon", pick(c, c.lexicon, "polarity_lexicon.csv")));
  inputs.push_back(input_entry("stopwords", pick(c, c.stopwords, "stopwords.txt")));
  if (!c.cases.empty()) inputs.push_back(input_entry("cases", pick(c, c.cases, nullptr)));
  return inputs;
}

}  // namespace

fs::path PipelineConfig::resolve(const std::string& path) const {
  if (path.empty()) return {};
  fs::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

PipelineConfig PipelineConfig::parse(std::string_view json_text, const fs::path& base_dir) {
  auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw StageError(Stage::config, "config is not a JSON object");

  static const std::set<std::string> kKeys = {
      "corpus", "format",  "substitutions", "backend",  "backend_path", "tau",    "weights", "lexicon",
      "stopwords", "cases", "countries",    "from",     "to",           "output_dir", "seed", "ngram_orders",
      "top_k"};
  PipelineConfig c;
  c.base_dir = base_dir;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.contains(key)) throw StageError(Stage::config, "unknown config key '" + key + "'");
    }
    if (auto it = doc.find("corpus"); it != doc.end()) {
      if (it->is_string()) {
        c.corpus = {it->get<std::string>()};
      } else {
        c.corpus = it->get<std::vector<std::string>>();
      }
    }
    if (auto it = doc.find("format"); it != doc.end()) {
      auto f = it->get<std::string>();
      if (f == "jsonl") {
        c.format = ingest::TweetFormat::jsonl;
      } else if (f == "csv") {
        c.format = ingest::TweetFormat::csv;
      } else {
        throw StageError(Stage::config, "format must be 'jsonl' or 'csv'");
      }
    }
    if (auto it = doc.find("backend"); it != doc.end()) {
      auto kind = parse_backend(it->get<std::string>());
      if (!kind) throw StageError(Stage::config, "unknown backend '" + it->get<std::string>() + "'");
      c.backend = *kind;
    }
    c.substitutions = doc.value("substitutions", "");
    c.backend_path = doc.value("backend_path", "");
    c.tau = doc.value("tau", classify::kDefaultThreshold);
    c.weights = doc.value("weights", "");
    c.lexicon = doc.value("lexicon", "");
    c.stopwords = doc.value("stopwords", "");
    c.cases = doc.value("cases", "");
    c.countries = doc.value("countries", std::vector<std::string>{});
    c.output_dir = doc.value("output_dir", "");
    c.seed = doc.value("seed", std::uint64_t{0});
    c.ngram_orders = doc.value("ngram_orders", std::vector<std::size_t>{2, 3});
    c.top_k = doc.value("top_k", std::size_t{20});
    auto from = doc.value("from", ""), to = doc.value("to", "");
    if (!from.empty() || !to.empty()) {
      auto start = YearMonth::parse(from), end = YearMonth::parse(to);
      if (!start || !end) throw StageError(Stage::config, "'from' and 'to' must both be YYYY-MM");
      c.months = ingest::MonthRange{*start, *end};
    }
  } catch (const json::exception& e) {
    throw StageError(Stage::config, std::string("malformed config: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw StageError(Stage::config, "cannot open config " + file.string());
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto base = file.parent_path();
  return parse(text, base.empty() ? fs::path(".") : base);
}

std::string PipelineConfig::echo() const {
  json j;
  j["corpus"] = corpus;
  j["format"] = format ? (*format == ingest::TweetFormat::jsonl ? "jsonl" : "csv") : "auto";
  j["substitutions"] = substitutions;
  j["backend"] = std::string(backend_name(backend));
  j["backend_path"] = backend_path;
  j["tau"] = tau;
  j["weights"] = weights;
  j["lexicon"] = lexicon;
  j["stopwords"] = stopwords;
  j["cases"] = cases;
  j["countries"] = countries;
  j["from"] = months ? months->start.str() : "";
  j["to"] = months ? months->end.str() : "";
  j["seed"] = seed;
  j["ngram_orders"] = ngram_orders;
  j["top_k"] = top_k;
  return j.dump(2);
}

void validate(const PipelineConfig& c) {
  auto fail = [](const std::string& msg) { throw StageError(Stage::config, msg); };
  if (c.corpus.empty()) fail("no corpus path given");
  for (const auto& p : c.corpus) {
    if (!fs::is_regular_file(c.resolve(p))) fail("corpus file not found: " + c.resolve(p).string());
    if (!c.format) {
      in_stage(Stage::config, [&] { return ingest::format_from_extension(p); });
    }
  }
  auto require_file = [&](const std::string& what, const Input& in) {
    if (!in.path.empty() && !fs::is_regular_file(in.path)) fail(what + " not found: " + in.path.string());
  };
  require_file("substitution table", pick(c, c.substitutions, nullptr));
  require_file("weight table", pick(c, c.weights, nullptr));
  require_file("polarity lexicon", pick(c, c.lexicon, "polarity_lexicon.csv"));
  require_file("stopword list", pick(c, c.stopwords, "stopwords.txt"));
  if (!c.cases.empty()) require_file("case counts", pick(c, c.cases, nullptr));
  auto backend = backend_input(c);
  switch (c.backend) {
    case BackendKind::rule_lexicon: require_file("rule lexicon", backend); break;
    case BackendKind::precomputed:
      if (backend.path.empty()) fail("precomputed backend needs backend_path");
      require_file("precomputed predictions", backend);
      break;
    case BackendKind::exported_model:
      if (backend.path.empty() || !fs::is_directory(backend.path)) {
        fail("exported model directory not found: " + backend.path.string());
      }
      break;
  }
  if (!(c.tau > 0.0 && c.tau < 1.0)) fail("tau must lie in (0, 1)");
  if (c.top_k < 1) fail("top_k must be at least 1");
  if (c.ngram_orders.empty()) fail("ngram_orders is empty");
  for (auto n : c.ngram_orders) {
    if (n < 1) fail("n-gram orders must be at least 1");
  }
  for (const auto& cc : c.countries) {
    if (cc.size() != 2 || !std::isupper(static_cast<unsigned char>(cc[0])) ||
        !std::isupper(static_cast<unsigned char>(cc[1]))) {
      fail("country '" + cc + "' is not an upper-case ISO 3166-1 alpha-2 code");
    }
  }
  if (c.months && !(c.months->start < c.months->end)) {
    fail("month range [" + c.months->start.str() + ", " + c.months->end.str() + ") is empty");
  }
}

Resources load_resources(const PipelineConfig& c) {
  Resources r;
  in_stage(Stage::config, [&] {
    if (auto in = pick(c, c.substitutions, nullptr); !in.path.empty()) r.table = text::SubstitutionTable::load(in.path);
    if (auto in = pick(c, c.weights, nullptr); !in.path.empty()) r.weights = polarity::WeightTable::load(in.path);
    r.lexicon = polarity::PolarityLexicon::load(pick(c, c.lexicon, "polarity_lexicon.csv").path);
    r.stopwords = ngram::load_stopwords(pick(c, c.stopwords, "stopwords.txt").path);
  });
  if (!c.cases.empty()) {
    in_stage(Stage::ingest, [&] {
      auto loaded = ingest::load_case_counts(c.resolve(c.cases));
      r.cases = std::move(loaded.series);
      r.case_rejects = loaded.rejects.size();
    });
  }
  in_stage(Stage::classify, [&] {
    auto backend = backend_input(c);
    switch (c.backend) {
      case BackendKind::rule_lexicon:
        r.backend = std::make_unique<classify::RuleLexiconBackend>(classify::RuleLexiconBackend::load(backend.path));
        break;
      case BackendKind::precomputed:
        r.backend = std::make_unique<classify::PrecomputedBackend>(classify::PrecomputedBackend::load(backend.path));
        break;
      case BackendKind::exported_model:
        r.backend = classify::load_exported_model(backend.path);
        break;
    }
  });
  return r;
}

namespace {

std::vector<ingest::TweetRecord> load_filtered(const PipelineConfig& c, ScoredCorpus& out) {
  return in_stage(Stage::ingest, [&] {
    std::vector<ingest::TweetRecord> records;
    for (const auto& p : c.corpus) {
      auto path = c.resolve(p);
      auto loaded = ingest::load_tweets(path, c.format ? *c.format : ingest::format_from_extension(path));
      out.report.valid_rows += loaded.report.valid_rows;
      out.report.duplicates += loaded.report.duplicates;
      out.report.rejects.insert(out.report.rejects.end(), loaded.report.rejects.begin(), loaded.report.rejects.end());
      std::move(loaded.records.begin(), loaded.records.end(), std::back_inserter(records));
    }
    out.report.duplicates += ingest::deduplicate(records);
    auto filtered = ingest::filter(records, {c.countries, c.months});
    out.filtered_out = records.size() - filtered.size();
    return filtered;
  });
}

polarity::ScoredTweet score_one(ingest::TweetRecord record, const PipelineConfig& c, const Resources& r) {
  auto normalized = text::normalize(record.text, r.table);
  auto probs = in_stage(Stage::classify, [&] { return r.backend->classify(record.id, normalized); });
  auto labels = classify::threshold(probs, c.tau);
  return polarity::score(std::move(record), std::move(normalized), probs, labels, r.weights, r.lexicon);
}

}  // namespace

ScoredCorpus score_corpus(const PipelineConfig& c, const Resources& r) {
  ScoredCorpus out;
  auto records = load_filtered(c, out);
  if (records.empty()) throw StageError(Stage::ingest, "no tweets remain after filtering");
  out.tweets.reserve(records.size());
  for (auto& rec : records) out.tweets.push_back(score_one(std::move(rec), c, r));
  return out;
}

std::vector<std::string> run_pipeline(const PipelineConfig& c, Command command) {
  validate(c);
  if (c.output_dir.empty()) throw StageError(Stage::config, "no output directory given");
  auto resources = load_resources(c);
  auto corpus = score_corpus(c, resources);

  OutputDir out(c.resolve(c.output_dir));
  write_scored(out, corpus);
  in_stage(Stage::aggregate, [&] {
    if (command == Command::aggregate || command == Command::report) write_aggregates(out, corpus, resources);
    if (command == Command::ngrams || command == Command::report) write_ngrams(out, c, corpus, resources);
  });

  json manifest;
  manifest["tool"] = "vaxsent";
  manifest["version"] = std::string(kVersion);
  manifest["command"] = std::string(command_name(command));
  manifest["config"] = json::parse(c.echo());
  manifest["inputs"] = in_stage(Stage::aggregate, [&] { return input_digests(c); });
  manifest["ingest"] = {{"valid_rows", corpus.report.valid_rows},
                        {"rejected_rows", corpus.report.rejects.size()},
                        {"duplicates", corpus.report.duplicates},
                        {"filtered_out", corpus.filtered_out},
                        {"scored", corpus.tweets.size()},
                        {"case_rows_rejected", resources.case_rejects}};
  json outputs = json::array();
  for (const auto& [name, digest] : out.files()) outputs.push_back({{"file", name}, {"sha256", digest}});
  manifest["outputs"] = outputs;
  out.write("manifest.json", manifest.dump(2) + "\n");

  std::vector<std::string> names;
  for (const auto& f : out.files()) names.push_back(f.first);
  return names;
}

std::string inspect(const PipelineConfig& c, std::string_view id) {
  validate(c);
  auto resources = load_resources(c);
  ScoredCorpus scratch;
  auto records = load_filtered(c, scratch);
  auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.id == id; });
  if (it == records.end()) throw StageError(Stage::ingest, "no tweet with id '" + std::string(id) + "'");
  auto t = score_one(*it, c, resources);

  std::ostringstream os;
  os << "id:             " << t.record.id << '\n'
     << "created_at:     " << format_timestamp(t.record.timestamp) << '\n'
     << "country:        " << aggregate::country_key(t.record) << '\n'
     << "raw:            " << t.record.text << '\n'
     << "normalized:     " << t.normalized.text << '\n'
     << "tokens:         " << t.normalized.token_count << '\n'
     << "backend:        " << resources.backend->name() << '\n'
     << "probabilities:\n";
  for (auto l : kAllLabels) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-15s %.4f  weight %+d\n", std::string(label_name(l)).c_str(),
                  t.probabilities[l], resources.weights.weight(l));
    os << line;
  }
  os << "labels:         " << (t.labels.empty() ? "(none)" : t.labels.str()) << " (tau " << fixed(c.tau, 2) << ")\n"
     << "vaccine_score:  " << fixed(t.vaccine_score) << " (" << t.weight_sum << "/" << resources.weights.divisor()
     << ")\n"
     << "naive_score:    " << fixed(t.naive_score) << '\n'
     << "stance:         " << polarity::stance_name(t.stance) << '\n'
     << "polarity_group: " << polarity::group_name(t.group) << '\n';
  return os.str();
}

}  // namespace vaxsent::report
