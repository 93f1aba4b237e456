#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vaxsent/labels.hpp"

// Layout of an exported classifier directory:
//
//   manifest.json   {"format": "torchscript", "model": "model.pt",
//                    "vocab": "vocab.txt", "labels": [...], "max_length": 128,
//                    "lowercase": true, "output": "probabilities"}
//   model.pt        TorchScript module; forward(input_ids, attention_mask),
//                   both int64 [1, L], returns [1, labels.size()]
//   vocab.txt       WordPiece vocabulary, one token per line, id = line index
//
// `labels` lists 10 or 11 label names in canonical order; a label missing
// from the list (normally OfficialReport) is emitted as probability 0.
// "output" is "probabilities" or "logits" (sigmoid applied here).
namespace vaxsent::classify {

struct ModelManifest {
  std::string format;
  std::filesystem::path model;
  std::filesystem::path vocab;
  std::vector<SentimentLabel> labels;
  std::size_t max_length = 128;
  bool lowercase = true;
  bool outputs_logits = false;

  // Throws BackendUnavailableError if manifest.json is missing, and
  // FormatError if it is malformed or names labels out of canonical order.
  static ModelManifest load(const std::filesystem::path& dir);
};

// BERT-style tokenizer: whitespace and punctuation split, then greedy
// longest-match-first WordPiece with "##" continuation pieces.
class WordPieceTokenizer {
 public:
  WordPieceTokenizer(std::vector<std::string> vocab, bool lowercase);

  // One token per line. Requires [CLS], [SEP], [UNK] and [PAD].
  static WordPieceTokenizer load(const std::filesystem::path& vocab_file, bool lowercase);

  std::vector<std::string> tokenize(std::string_view text) const;

  // [CLS] pieces... [SEP], truncated to max_length ids.
  std::vector<std::int64_t> encode(std::string_view text, std::size_t max_length) const;

  std::optional<std::int64_t> id_of(std::string_view token) const;
  std::size_t vocab_size() const { return vocab_.size(); }

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::int64_t> ids_;
  bool lowercase_;
  std::int64_t cls_ = 0, sep_ = 0, unk_ = 0;
};

}  // namespace vaxsent::classify
