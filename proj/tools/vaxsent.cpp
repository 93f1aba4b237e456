// vaxsent: score, aggregate and inspect vaccine-related tweets.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vaxsent/pipeline.hpp"

namespace {

using vaxsent::report::Command;
using vaxsent::report::PipelineConfig;
using vaxsent::report::Stage;
using vaxsent::report::StageError;

struct Overrides {
  std::string config;
  std::vector<std::string> corpus;
  std::string out;
  std::string backend;
  std::string backend_path;
  std::optional<double> tau;
  std::vector<std::string> countries;
  std::string from, to;
};

void add_options(CLI::App* cmd, Overrides& o, bool with_output) {
  cmd->add_option("-c,--config", o.config, "JSON config file");
  cmd->add_option("--corpus", o.corpus, "tweet file(s), .jsonl or .csv")->expected(1, -1);
  if (with_output) cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--backend", o.backend, "rule-lexicon, precomputed or exported-model");
  cmd->add_option("--backend-path", o.backend_path, "cue file, prediction file or model directory");
  cmd->add_option("--tau", o.tau, "label threshold in (0, 1)");
  cmd->add_option("--country", o.countries, "keep only these country codes")->expected(1, -1);
  cmd->add_option("--from", o.from, "first month kept, YYYY-MM");
  cmd->add_option("--to", o.to, "first month dropped, YYYY-MM");
}

PipelineConfig build_config(const Overrides& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig{} : PipelineConfig::load(o.config);
  // Command-line paths are relative to the working directory, config paths
  // to the config file.
  auto cwd = [](const std::string& p) { return std::filesystem::absolute(p).string(); };
  if (!o.corpus.empty()) {
    c.corpus.clear();
    for (const auto& p : o.corpus) c.corpus.push_back(cwd(p));
  }
  if (!o.out.empty()) c.output_dir = cwd(o.out);
  if (!o.backend.empty()) {
    auto kind = vaxsent::report::parse_backend(o.backend);
    if (!kind) throw StageError(Stage::config, "unknown backend '" + o.backend + "'");
    c.backend = *kind;
  }
  if (!o.backend_path.empty()) c.backend_path = cwd(o.backend_path);
  if (o.tau) c.tau = *o.tau;
  if (!o.countries.empty()) c.countries = o.countries;
  if (!o.from.empty() || !o.to.empty()) {
    auto start = vaxsent::YearMonth::parse(o.from), end = vaxsent::YearMonth::parse(o.to);
    if (!start || !end) throw StageError(Stage::config, "--from and --to must both be YYYY-MM");
    c.months = vaxsent::ingest::MonthRange{*start, *end};
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment and stance scoring for vaccine tweets"};
  app.set_version_flag("--version", std::string(vaxsent::report::kVersion));
  app.require_subcommand(1);

  Overrides o;
  std::string inspect_id;
  auto* validate = app.add_subcommand("validate", "check the config and every input file");
  add_options(validate, o, false);
  struct Run {
    CLI::App* cmd;
    Command command;
  };
  std::vector<Run> runs;
  for (auto [name, command, help] :
       {std::tuple{"score", Command::score, "write per-tweet scores"},
        std::tuple{"aggregate", Command::aggregate, "write scores and monthly/country aggregates"},
        std::tuple{"ngrams", Command::ngrams, "write scores and top n-grams per polarity group"},
        std::tuple{"report", Command::report, "write every output"}}) {
    auto* cmd = app.add_subcommand(name, help);
    add_options(cmd, o, true);
    runs.push_back({cmd, command});
  }
  auto* inspect = app.add_subcommand("inspect", "trace one tweet through every stage");
  inspect->add_option("id", inspect_id, "tweet id")->required();
  add_options(inspect, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto config = build_config(o);
    if (validate->parsed()) {
      vaxsent::report::validate(config);
      auto resources = vaxsent::report::load_resources(config);
      std::cout << "config ok\n" << config.echo() << '\n';
      return 0;
    }
    if (inspect->parsed()) {
      std::cout << vaxsent::report::inspect(config, inspect_id);
      return 0;
    }
    for (const auto& r : runs) {
      if (!r.cmd->parsed()) continue;
      for (const auto& f : vaxsent::report::run_pipeline(config, r.command)) std::cout << f << '\n';
    }
    return 0;
  } catch (const StageError& e) {
    std::cerr << "vaxsent: " << e.what() << '\n';
    return vaxsent::report::exit_code(e.stage());
  } catch (const std::exception& e) {
    std::cerr << "vaxsent: " << e.what() << '\n';
    return 1;
  }
}
