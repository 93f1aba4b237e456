#include "vaxsent/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "utf8.hpp"
#include "vaxsent/csv.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent::classify {

LabelSet threshold(const LabelVector& v, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw InvalidParameterError("threshold must lie in (0, 1), got " + std::to_string(tau));
  }
  LabelSet out;
  for (auto label : kAllLabels) {
    if (v[label] >= tau) out.insert(label);
  }
  return out;
}

RuleLexiconBackend::RuleLexiconBackend(std::vector<Cue> cues) : cues_(std::move(cues)) {
  for (const auto& cue : cues_) {
    if (cue.tokens.empty()) throw InvalidParameterError("rule lexicon cue has no words");
  }
}

RuleLexiconBackend RuleLexiconBackend::load(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].fields != std::vector<std::string>{"cue", "label"}) {
    throw FormatError(path.string() + ": expected header 'cue,label'");
  }
  // Cues go through the same character rules as tweets, without expansions.
  const auto plain = text::SubstitutionTable::from_entries({});
  std::vector<Cue> cues;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto where = path.string() + ":" + std::to_string(row.line);
    if (row.fields.size() != 2) throw FormatError(where + ": expected 2 fields");
    auto label = parse_label(row.fields[1]);
    if (!label) throw FormatError(where + ": unknown label '" + row.fields[1] + "'");
    auto tokens = text::tokenize(text::normalize(row.fields[0], plain));
    if (tokens.empty()) throw FormatError(where + ": empty cue");
    cues.push_back({std::move(tokens), *label});
  }
  return RuleLexiconBackend(std::move(cues));
}

LabelVector RuleLexiconBackend::classify(std::string_view, const text::NormalizedText& text) const {
  auto tokens = text::tokenize(text);
  std::array<double, kLabelCount> probs{};
  for (const auto& cue : cues_) {
    if (probs[index_of(cue.label)] == 1.0) continue;
    auto hit = std::search(tokens.begin(), tokens.end(), cue.tokens.begin(), cue.tokens.end());
    if (hit != tokens.end()) probs[index_of(cue.label)] = 1.0;
  }
  return LabelVector(probs);
}

PrecomputedBackend::PrecomputedBackend(std::unordered_map<std::string, LabelVector> table)
    : table_(std::move(table)) {}

PrecomputedBackend PrecomputedBackend::load(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw FormatError(path.string() + ": empty prediction file");
  const auto& header = rows[0].fields;
  bool probs_form = header.size() == kLabelCount + 1;
  if (probs_form) {
    for (std::size_t i = 0; i < kLabelCount; ++i) {
      if (header[i + 1] != "p" + std::to_string(i)) probs_form = false;
    }
  }
  bool labels_form = header.size() == 2 && header[1] == "labels";
  if (header.empty() || header[0] != "id" || (!probs_form && !labels_form)) {
    throw FormatError(path.string() + ": expected header 'id,p0,...,p10' or 'id,labels'");
  }
  std::unordered_map<std::string, LabelVector> table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    auto where = path.string() + ":" + std::to_string(rows[r].line);
    if (f.size() != header.size()) throw FormatError(where + ": wrong number of fields");
    LabelVector v;
    try {
      if (probs_form) {
        std::array<double, kLabelCount> p{};
        for (std::size_t i = 0; i < kLabelCount; ++i) {
          auto s = detail::trim(f[i + 1]);
          auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p[i]);
          if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            throw FormatError(where + ": bad probability '" + f[i + 1] + "'");
          }
        }
        v = LabelVector(p);
      } else {
        std::array<double, kLabelCount> p{};
        for (auto l : LabelSet::parse(f[1]).labels()) p[index_of(l)] = 1.0;
        v = LabelVector(p);
      }
    } catch (const InvalidParameterError& e) {
      throw FormatError(where + ": " + e.what());
    }
    if (!table.emplace(f[0], v).second) throw FormatError(where + ": duplicate id '" + f[0] + "'");
  }
  return PrecomputedBackend(std::move(table));
}

LabelVector PrecomputedBackend::classify(std::string_view id, const text::NormalizedText&) const {
  auto it = table_.find(std::string(id));
  if (it == table_.end()) {
    throw BackendUnavailableError("no precomputed prediction for id '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace vaxsent::classify
