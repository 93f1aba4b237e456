#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaxsent/classifier.hpp"
#include "vaxsent/corpus.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/ngram.hpp"
#include "vaxsent/normalize.hpp"
#include "vaxsent/polarity.hpp"

namespace vaxsent::report {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Stage { config, ingest, classify, aggregate };

std::string_view stage_name(Stage stage);

// 2 config, 3 ingest, 4 classify, 5 aggregate (including output writing).
int exit_code(Stage stage);

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

enum class BackendKind { rule_lexicon, precomputed, exported_model };
std::string_view backend_name(BackendKind kind);
std::optional<BackendKind> parse_backend(std::string_view name);

// Bundled data directory: $VAXSENT_DATA_DIR if set, else the source tree's
// data/ directory recorded at build time.
std::filesystem::path default_data_dir();

// Paths are kept as written; relative ones resolve against `base_dir`. An
// empty path selects the built-in default for that input.
struct PipelineConfig {
  std::filesystem::path base_dir = ".";
  std::vector<std::string> corpus;
  std::optional<ingest::TweetFormat> format;  // inferred from extension if unset
  std::string substitutions;
  BackendKind backend = BackendKind::rule_lexicon;
  std::string backend_path;
  double tau = classify::kDefaultThreshold;
  std::string weights;
  std::string lexicon;
  std::string stopwords;
  std::string cases;
  std::vector<std::string> countries;
  std::optional<ingest::MonthRange> months;
  std::string output_dir;
  std::uint64_t seed = 0;  // reserved; no stage draws random numbers
  std::vector<std::size_t> ngram_orders = {2, 3};
  std::size_t top_k = 20;

  std::filesystem::path resolve(const std::string& path) const;

  // Parses the JSON document format described in the README. Throws
  // StageError(config) on malformed input.
  static PipelineConfig parse(std::string_view json_text, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& file);

  // Canonical JSON echo of every field except base_dir and output_dir.
  std::string echo() const;
};

// Throws StageError(config) if a referenced file is missing, tau is outside
// (0, 1), an n-gram parameter is invalid, or the month range is empty.
void validate(const PipelineConfig& config);

struct Resources {
  text::SubstitutionTable table = text::SubstitutionTable::defaults();
  std::unique_ptr<classify::ClassifierBackend> backend;
  polarity::WeightTable weights = polarity::WeightTable::defaults();
  polarity::PolarityLexicon lexicon;
  ngram::StopwordSet stopwords;
  std::vector<ingest::CaseSeries> cases;
  std::size_t case_rejects = 0;
};

// Table and lexicon errors are config-stage errors; backend failures are
// classify-stage errors.
Resources load_resources(const PipelineConfig& config);

struct ScoredCorpus {
  std::vector<polarity::ScoredTweet> tweets;
  ingest::LoadReport report;  // summed over corpus files
  std::size_t filtered_out = 0;
};

// Loads, deduplicates (across files too), filters, normalizes, classifies and
// scores the corpus.
ScoredCorpus score_corpus(const PipelineConfig& config, const Resources& resources);

enum class Command { score, aggregate, ngrams, report };
std::string_view command_name(Command command);

// Runs the stages needed for `command` and writes their files plus
// manifest.json into config.output_dir. Returns the written file names.
std::vector<std::string> run_pipeline(const PipelineConfig& config, Command command);

// Human-readable trace of one tweet through every stage. Throws
// StageError(ingest) if the id is not in the (filtered) corpus.
std::string inspect(const PipelineConfig& config, std::string_view id);

}  // namespace vaxsent::report
