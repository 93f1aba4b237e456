#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vaxsent/labels.hpp"
#include "vaxsent/normalize.hpp"

namespace vaxsent::classify {

inline constexpr double kDefaultThreshold = 0.5;

// Produces one probability per sentiment label. Implementations are immutable
// after construction and `classify` may be called concurrently.
class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;

  // `id` identifies the tweet (used by replaying backends); `text` is its
  // normalized form. Throws BackendUnavailableError rather than returning a
  // zero vector when the backend cannot answer.
  virtual LabelVector classify(std::string_view id, const text::NormalizedText& text) const = 0;

  virtual std::string name() const = 0;
};

// label i is in the result iff v[i] >= tau. Throws InvalidParameterError
// unless 0 < tau < 1.
LabelSet threshold(const LabelVector& v, double tau);

// Keyword cues: probability 1 for a label when any of its cues occurs as a
// token (or consecutive token sequence), else 0.
class RuleLexiconBackend final : public ClassifierBackend {
 public:
  struct Cue {
    std::vector<std::string> tokens;
    SentimentLabel label;
  };

  explicit RuleLexiconBackend(std::vector<Cue> cues);

  // CSV `cue,label`. Cues are normalized with the default substitution table
  // rules (lowercase, punctuation stripped).
  static RuleLexiconBackend load(const std::filesystem::path& path);

  LabelVector classify(std::string_view id, const text::NormalizedText& text) const override;
  std::string name() const override { return "rule-lexicon"; }

  const std::vector<Cue>& cues() const { return cues_; }

 private:
  std::vector<Cue> cues_;
};

// Replays stored predictions keyed by tweet id.
class PrecomputedBackend final : public ClassifierBackend {
 public:
  explicit PrecomputedBackend(std::unordered_map<std::string, LabelVector> table);

  // CSV with header `id,p0,...,p10` (probabilities) or `id,labels` (label
  // names joined by ';', mapped to indicator vectors).
  static PrecomputedBackend load(const std::filesystem::path& path);

  LabelVector classify(std::string_view id, const text::NormalizedText& text) const override;
  std::string name() const override { return "precomputed"; }

  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, LabelVector> table_;
};

// Loads a fine-tuned encoder exported as a directory (see exported_model.hpp).
// Throws BackendUnavailableError when the directory is incomplete or the
// library was built without libtorch.
std::unique_ptr<ClassifierBackend> load_exported_model(const std::filesystem::path& dir);

bool exported_model_supported();

}  // namespace vaxsent::classify
