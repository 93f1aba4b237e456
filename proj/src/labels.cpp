#include "vaxsent/labels.hpp"

#include <cmath>

#include "utf8.hpp"
#include "vaxsent/error.hpp"

namespace vaxsent {

namespace {

constexpr std::array<std::string_view, kLabelCount> kNames = {
    "Optimistic", "Thankful", "Empathetic", "Pessimistic", "Anxious", "Sad",
    "Annoyed",    "Denial",   "OfficialReport", "Surprise", "Joking",
};

}  // namespace

std::string_view label_name(SentimentLabel label) { return kNames[index_of(label)]; }

std::optional<SentimentLabel> parse_label(std::string_view name) {
  auto key = detail::ascii_lower(detail::trim(name));
  if (key == "official" || key == "official report" || key == "official_report") {
    return SentimentLabel::OfficialReport;
  }
  for (auto label : kAllLabels) {
    if (detail::ascii_lower(label_name(label)) == key) return label;
  }
  return std::nullopt;
}

LabelVector::LabelVector(const std::array<double, kLabelCount>& probs) : probs_(probs) {
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw InvalidParameterError("probability for " + std::string(kNames[i]) +
                                  " outside [0, 1]: " + std::to_string(probs[i]));
    }
  }
}

LabelVector LabelVector::indicator(std::initializer_list<SentimentLabel> labels) {
  std::array<double, kLabelCount> p{};
  for (auto l : labels) p[index_of(l)] = 1.0;
  return LabelVector(p);
}

LabelSet::LabelSet(std::initializer_list<SentimentLabel> labels) {
  for (auto l : labels) insert(l);
}

LabelSet LabelSet::operator|(const LabelSet& other) const {
  LabelSet out;
  out.bits_ = bits_ | other.bits_;
  return out;
}

std::vector<SentimentLabel> LabelSet::labels() const {
  std::vector<SentimentLabel> out;
  for (auto l : kAllLabels) {
    if (contains(l)) out.push_back(l);
  }
  return out;
}

std::string LabelSet::str() const {
  std::string out;
  for (auto l : labels()) {
    if (!out.empty()) out.push_back(';');
    out += label_name(l);
  }
  return out;
}

LabelSet LabelSet::parse(std::string_view joined) {
  LabelSet out;
  while (!joined.empty()) {
    auto pos = joined.find(';');
    auto part = detail::trim(joined.substr(0, pos));
    if (!part.empty()) {
      auto label = parse_label(part);
      if (!label) throw InvalidParameterError("unknown sentiment label '" + std::string(part) + "'");
      out.insert(*label);
    }
    if (pos == std::string_view::npos) break;
    joined.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace vaxsent
