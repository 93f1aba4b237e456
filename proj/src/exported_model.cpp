#include "vaxsent/exported_model.hpp"

#include <fstream>

#include "json.hpp"
#include "utf8.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent::classify {

ModelManifest ModelManifest::load(const std::filesystem::path& dir) {
  auto file = dir / "manifest.json";
  std::ifstream in(file);
  if (!in) throw BackendUnavailableError("exported model manifest not found: " + file.string());
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw FormatError(file.string() + ": not a JSON object");

  ModelManifest m;
  try {
    m.format = doc.value("format", std::string("torchscript"));
    m.model = dir / doc.value("model", std::string("model.pt"));
    m.vocab = dir / doc.value("vocab", std::string("vocab.txt"));
    m.max_length = doc.value("max_length", std::size_t{128});
    m.lowercase = doc.value("lowercase", true);
    auto output = doc.value("output", std::string("probabilities"));
    if (output == "logits") {
      m.outputs_logits = true;
    } else if (output != "probabilities") {
      throw FormatError(file.string() + ": output must be 'probabilities' or 'logits'");
    }
    for (const auto& name : doc.at("labels")) {
      auto label = parse_label(name.get<std::string>());
      if (!label) throw FormatError(file.string() + ": unknown label " + name.dump());
      m.labels.push_back(*label);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(file.string() + ": " + e.what());
  }
  if (m.format != "torchscript") {
    throw FormatError(file.string() + ": unsupported model format '" + m.format + "'");
  }
  if (m.labels.size() != kLabelCount && m.labels.size() != kLabelCount - 1) {
    throw FormatError(file.string() + ": expected 10 or 11 labels, got " + std::to_string(m.labels.size()));
  }
  for (std::size_t i = 1; i < m.labels.size(); ++i) {
    if (index_of(m.labels[i - 1]) >= index_of(m.labels[i])) {
      throw FormatError(file.string() + ": labels must be unique and in canonical order");
    }
  }
  if (m.max_length < 2) throw FormatError(file.string() + ": max_length must be at least 2");
  return m;
}

namespace {

bool is_punctuation(char32_t c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
         (c >= 123 && c <= 126) || (c >= 0x2000 && c <= 0x206F);
}

bool is_control(char32_t c) {
  if (c == '\t' || c == '\n' || c == '\r') return false;
  return c < 0x20 || c == 0x7F || (c >= 0x80 && c < 0xA0);
}

std::string to_utf8(std::u32string_view s) {
  std::string out;
  for (char32_t c : s) detail::append_utf8(out, c);
  return out;
}

constexpr std::size_t kMaxCharsPerWord = 100;

}  // namespace

WordPieceTokenizer::WordPieceTokenizer(std::vector<std::string> vocab, bool lowercase)
    : vocab_(std::move(vocab)), lowercase_(lowercase) {
  for (std::size_t i = 0; i < vocab_.size(); ++i) ids_.emplace(vocab_[i], static_cast<std::int64_t>(i));
  for (auto [token, slot] : {std::pair{"[CLS]", &cls_}, std::pair{"[SEP]", &sep_},
                             std::pair{"[UNK]", &unk_}}) {
    auto id = id_of(token);
    if (!id) throw FormatError(std::string("WordPiece vocabulary lacks ") + token);
    *slot = *id;
  }
  if (!id_of("[PAD]")) throw FormatError("WordPiece vocabulary lacks [PAD]");
}

WordPieceTokenizer WordPieceTokenizer::load(const std::filesystem::path& vocab_file, bool lowercase) {
  std::ifstream in(vocab_file);
  if (!in) throw BackendUnavailableError("vocabulary not found: " + vocab_file.string());
  std::vector<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    vocab.push_back(line);
  }
  return WordPieceTokenizer(std::move(vocab), lowercase);
}

std::optional<std::int64_t> WordPieceTokenizer::id_of(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> WordPieceTokenizer::tokenize(std::string_view text) const {
  // Basic pass: drop controls, split on whitespace and around punctuation.
  std::vector<std::u32string> words;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (char32_t c : detail::decode_utf8(text)) {
    if (c == 0 || c == detail::kReplacement || is_control(c)) continue;
    if (lowercase_ && c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    if (detail::is_unicode_space(c)) {
      flush();
    } else if (is_punctuation(c)) {
      flush();
      words.push_back(std::u32string(1, c));
    } else {
      current.push_back(c);
    }
  }
  flush();

  // Greedy longest-match-first.
  std::vector<std::string> pieces;
  for (const auto& word : words) {
    if (word.size() > kMaxCharsPerWord) {
      pieces.emplace_back("[UNK]");
      continue;
    }
    std::vector<std::string> sub;
    std::size_t start = 0;
    bool bad = false;
    while (start < word.size()) {
      std::size_t end = word.size();
      std::string match;
      while (start < end) {
        auto candidate = to_utf8(std::u32string_view(word).substr(start, end - start));
        if (start > 0) candidate = "##" + candidate;
        if (ids_.contains(candidate)) {
          match = std::move(candidate);
          break;
        }
        --end;
      }
      if (match.empty()) {
        bad = true;
        break;
      }
      sub.push_back(std::move(match));
      start = end;
    }
    if (bad) {
      pieces.emplace_back("[UNK]");
    } else {
      pieces.insert(pieces.end(), sub.begin(), sub.end());
    }
  }
  return pieces;
}

std::vector<std::int64_t> WordPieceTokenizer::encode(std::string_view text, std::size_t max_length) const {
  if (max_length < 2) throw InvalidParameterError("max_length must be at least 2");
  std::vector<std::int64_t> ids{cls_};
  for (const auto& piece : tokenize(text)) {
    if (ids.size() + 1 >= max_length) break;
    ids.push_back(id_of(piece).value_or(unk_));
  }
  ids.push_back(sep_);
  return ids;
}

}  // namespace vaxsent::classify
